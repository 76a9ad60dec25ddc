#pragma once
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bsl/billiard.hpp"
#include "bsl/boundary_dynamics.hpp"
#include "bsl/helgason.hpp"
#include "bsl/involution.hpp"
#include "bsl/transfer.hpp"

namespace bsl {

// Everything built once per group: Markov maps, baker (both J routes), operators, kernel.
class Pipeline {
public:
    explicit Pipeline(const FuchsianGroup& g, std::uint64_t seed = 7);
    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;

    const FuchsianGroup& group() const { return sys_.group; }
    const BoundarySystem& system() const { return sys_; }
    const BakerSystem& baker() const { return baker_; }
    const TransferOperator& left_op() const { return L_; }
    const TransferOperator& right_op() const { return R_; }
    const InvolutionKernel& kernel() const { return K_; }

private:
    BoundarySystem sys_;
    BakerSystem baker_;
    TransferOperator L_, R_;
    InvolutionKernel K_;
};

// points of the polygon within hyperbolic distance `radius` of the origin
std::vector<cplx> polygon_samples(const FuchsianGroup& g, int n, double radius, std::uint64_t seed);

struct LevelResult {
    int N = 0;
    double t = 0;              // refined minimum at this resolution
    SpectralResult spec;       // left operator
    double dual_consistency = 0;   // |<nu, M psi> - <nu, psi>| over random piecewise polynomials
    KernelTransfer kernel;     // kernel-transferred psi from the right operator's nu
    double nu_norm = 0;
    double automorphy = 0;
    double equivariance = 0;
    double holder = 0;
};

struct TStarOptions {
    std::vector<int> levels{16, 24, 32};
    double window = 2e-3;            // refinement half-width around the guess
    int grid = 400;                  // kernel-transfer evaluation points
    int automorphy_samples = 2000;   // polygon points
    double automorphy_radius = 2.3;  // hyperbolic bound on both z and g z
    bool roundtrip = true;
    std::vector<double> radii{12.0, 14.0};
    double otal_tol = 1e-8;
    std::uint64_t seed = 1;
};

struct TStarReport {
    double t_guess = 0;
    std::vector<LevelResult> levels;
    double two_step_gap = 0;   // |lambda - 1| of the two-step operator at the coarsest level
    std::unique_ptr<RoundTripReport> roundtrip;   // finest level
    double roundtrip_seconds = 0;                 // wall time of the round trip alone
    double t_stability() const;                   // |t(finest) - t(coarsest)|
    const LevelResult& finest() const { return levels.back(); }
};

// throws SpuriousMinimum when no eigenvalue lies within 1e-3 of 1
TStarReport analyze_tstar(const Pipeline& P, double t_guess, const TStarOptions& opt = {});

} // namespace bsl
