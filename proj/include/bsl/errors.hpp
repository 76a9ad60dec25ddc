#pragma once
#include <stdexcept>
#include <string>

namespace bsl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMap : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegeneratePartition : Error { using Error::Error; };
struct NoFiniteMarkovOrbit : Error { using Error::Error; };
struct BakerConstruction : Error { using Error::Error; };
struct SpuriousMinimum : Error { using Error::Error; };
struct DegenerateTransfer : Error { using Error::Error; };
struct BranchConsistency : Error { using Error::Error; };
struct NumericalIntegration : Error { using Error::Error; };
struct ConjugacySearchFailure : Error { using Error::Error; };

// carries the text of the failing report
struct InvariantViolation : Error {
    std::string report;
    InvariantViolation(const std::string& what, std::string rep)
        : Error(what), report(std::move(rep)) {}
};

} // namespace bsl
