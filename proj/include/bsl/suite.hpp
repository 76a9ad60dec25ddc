#pragma once
#include <cstdint>

#include "bsl/analysis.hpp"
#include "bsl/config.hpp"
#include "bsl/report.hpp"

namespace bsl {

// Invariant suite, one function per module. Every check lands in the report with its
// measured value and threshold; nothing here throws on a failed check.
void check_geometry(SuiteReport& rep, const RunConfig& cfg, int samples = 1000);
void check_domain(SuiteReport& rep, const RunConfig& cfg, const FuchsianGroup& g);
void check_markov(SuiteReport& rep, const RunConfig& cfg, const Pipeline& P);
void check_billiard(SuiteReport& rep, const RunConfig& cfg, const Pipeline& P, int orbit_steps = 100000);
void check_involution(SuiteReport& rep, const RunConfig& cfg, const Pipeline& P);
void check_transfer(SuiteReport& rep, const RunConfig& cfg, const Pipeline& P);
void check_helgason(SuiteReport& rep, const RunConfig& cfg);
// properties of one critical value; `tag` prefixes the check names
void check_tstar(SuiteReport& rep, const RunConfig& cfg, const TStarReport& T, const std::string& tag);

// whole suite: all of the above plus a scan over cfg.scan and the first accepted t*
SuiteReport run_verify(const RunConfig& cfg);

// geometric containment through the side geodesics (independent of the Dirichlet test)
bool inside_sides(const FuchsianGroup& g, cplx z);

} // namespace bsl
