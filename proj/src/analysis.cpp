#include "bsl/analysis.hpp"

#include <chrono>
#include <cmath>

namespace bsl {

Pipeline::Pipeline(const FuchsianGroup& g, std::uint64_t seed)
    : sys_(build_boundary_system(g)),
      baker_(build_baker(sys_.left, sys_.right, 2000, seed)),
      L_(sys_.left),
      R_(sys_.right),
      K_(baker_) {}

std::vector<cplx> polygon_samples(const FuchsianGroup& g, int n, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double rmax = std::tanh(radius / 2);
    std::uniform_real_distribution<double> U(-rmax, rmax);
    std::vector<cplx> zs;
    while (static_cast<int>(zs.size()) < n) {
        cplx z(U(rng), U(rng));
        if (std::abs(z) < rmax && g.contains(z, 1e-9)) zs.push_back(z);
    }
    return zs;
}

double TStarReport::t_stability() const { return std::abs(levels.back().t - levels.front().t); }

namespace {

// random per-arc polynomials of degree < N, compared through the node values
double dual_consistency(const Collocation& C, const SpectralResult& sp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> G;
    std::uniform_int_distribution<int> D(0, C.N() - 1);
    double worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        int deg = D(rng);
        int arcs = C.op().arcs();
        std::vector<cplx> coef(static_cast<size_t>(arcs) * (deg + 1));
        for (auto& c : coef) c = cplx(G(rng), G(rng));
        CVector v(C.dim());
        for (int k = 0; k < arcs; ++k)
            for (int j = 0; j < C.N(); ++j) {
                double u = C.unit_nodes()[j];
                cplx p = 0;
                for (int d = deg; d >= 0; --d) p = p * u + coef[k * (deg + 1) + d];
                v[k * C.N() + j] = p;
            }
        cplx lhs = sp.left.transpose() * C.apply(sp.s, v);
        cplx rhs = sp.left.transpose() * v;
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
}

double equivariance_metric(const BoundaryDistribution& d, const BowenSeriesMap& T) {
    auto psi = [](double th) { return cplx(1.0, 0.0) + 0.5 * unit(th); };
    double worst = 0, scale = 0;
    for (int k = 0; k < T.arcs(); ++k) {
        auto p = equivariance(d, T, T.group().gens[T.partition().gen[k]], k, psi);
        worst = std::max(worst, std::abs(p.lhs - p.rhs));
        scale = std::max(scale, std::abs(p.rhs));
    }
    return worst / scale;
}

} // namespace

TStarReport analyze_tstar(const Pipeline& P, double t_guess, const TStarOptions& opt) {
    TStarReport rep;
    rep.t_guess = t_guess;
    auto zs = polygon_samples(P.group(), opt.automorphy_samples, opt.automorphy_radius, opt.seed);
    auto grid = uniform_grid(opt.grid);
    double t = t_guess;
    for (size_t i = 0; i < opt.levels.size(); ++i) {
        int N = opt.levels[i];
        Collocation C(P.left_op(), N), CR(P.right_op(), N);
        LevelResult lv;
        lv.N = N;
        lv.t = refine_minimum(C, t - opt.window, t + opt.window);
        if (i == 0) t = lv.t;
        cplx s(0.5, lv.t);
        lv.spec = C.eigenpair(s);
        lv.dual_consistency = dual_consistency(C, lv.spec, opt.seed + N);
        auto right = CR.eigenpair(s);
        lv.nu_norm = right.left.cwiseAbs().sum();
        lv.kernel = transfer_dual_to_eigenfunction(P.kernel(), CR, right.left, s, grid);
        auto bd = BoundaryDistribution::from_nodes(C, lv.spec.left, s);
        EigenfunctionField ef(bd);
        lv.automorphy = automorphy_metric(ef, P.group().gens, zs, opt.automorphy_radius);
        lv.equivariance = equivariance_metric(bd, P.system().left);
        lv.holder = holder_half_constant(bd, 1e-3);
        if (i + 1 == opt.levels.size() && opt.roundtrip) {
            auto t0 = std::chrono::steady_clock::now();
            rep.roundtrip = std::make_unique<RoundTripReport>(
                round_trip(ef, roundtrip_boundaries(P.system().left.partition()), opt.radii, opt.otal_tol));
            rep.roundtrip_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        if (i == 0) {
            TransferOperator two(P.system().left, 2);
            Collocation C2(two, N);
            rep.two_step_gap = std::abs(C2.eigenpair(s, 1.0).eigenvalue - 1.0);
        }
        rep.levels.push_back(std::move(lv));
    }
    return rep;
}

} // namespace bsl
