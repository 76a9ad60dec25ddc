#include <doctest.h>

#include <cmath>
#include <random>

#include "bsl/analysis.hpp"
#include "bsl/errors.hpp"

using namespace bsl;

namespace {
const Pipeline& pipe() {
    static Pipeline P(build_regular_4g_gon(2));
    return P;
}
constexpr double kT1 = 1.8944358682;

std::vector<cplx> spiral(int n, double rmax) {
    std::vector<cplx> zs;
    for (int i = 0; i < n; ++i) zs.push_back(std::polar(rmax * std::sqrt((i + 0.5) / n), 2.4 * i));
    return zs;
}
} // namespace

TEST_CASE("single node synthesis") {
    auto d = BoundaryDistribution::single(0.0, 0.5);
    EigenfunctionField ef(d);
    CHECK(std::abs(ef.f(0.0) - 1.0) < 1e-14);
    CHECK(std::abs(d.total() - 1.0) < 1e-15);
    for (cplx z : spiral(30, 0.95)) CHECK(std::abs(ef.f(z) - std::sqrt(poisson_kernel(z, 1.0))) < 1e-12);
}

TEST_CASE("f(0) is the total mass") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> U(0, kTau);
    std::normal_distribution<double> G;
    std::vector<double> eta;
    std::vector<cplx> nu;
    for (int i = 0; i < 40; ++i) {
        eta.push_back(U(rng));
        nu.push_back(cplx(G(rng), G(rng)));
    }
    auto d = BoundaryDistribution::from_masses(eta, nu, cplx(0.5, 3.0));
    EigenfunctionField ef(d);
    CHECK(std::abs(ef.f(0.0) - d.total()) < 1e-13);
}

TEST_CASE("radial derivative against finite differences") {
    auto d = BoundaryDistribution::from_masses({0.3, 2.0, 4.4}, {cplx(1, 0.5), cplx(-0.3, 1), cplx(0.7, -0.2)},
                                               cplx(0.5, 4.0));
    EigenfunctionField ef(d);
    double h = 1e-5;
    for (double r : {0.3, 1.0, 2.5})
        for (double th : {0.1, 1.9, 4.0}) {
            auto at = [&](double rr) { return ef.f(std::tanh(rr / 2) * unit(th)); };
            cplx fd = (at(r + h) - at(r - h)) / (2 * h);
            cplx an = ef.df_dr(std::tanh(r / 2) * unit(th));
            CHECK(std::abs(fd - an) / std::abs(an) < 1e-6);
            cplx f, df;
            ef.polar(r, th, f, df);
            CHECK(std::abs(df - an) / std::abs(an) < 1e-12);
            CHECK(std::abs(f - at(r)) / std::abs(f) < 1e-12);
        }
}

TEST_CASE("laplace eigen-equation") {
    auto zs = spiral(50, 0.9);
    EigenfunctionField half(BoundaryDistribution::single(0.0, 0.5));
    auto a = verify_laplace_eigen(half, zs, 1e-3);
    auto b = verify_laplace_eigen(half, zs, 5e-4);
    CHECK(a.ok);
    CHECK(a.max_residual < 1e-3);
    double gain = a.max_residual / b.max_residual;
    CHECK(gain > 3.5);
    CHECK(gain < 4.5);
    EigenfunctionField one(BoundaryDistribution::single(1.0, 1.0));
    CHECK(verify_laplace_eigen(one, zs, 1e-3).max_residual < 1e-3);
}

TEST_CASE("stieltjes pairing") {
    auto d = BoundaryDistribution::from_masses({0.5, 1.5, 4.0}, {cplx(1, 0), cplx(0, 2), cplx(-1, 1)}, 0.5);
    auto one = [](double) { return cplx(1, 0); };
    CHECK(std::abs(d.stieltjes(one, 0, kTau) - d.total()) < 1e-14);
    // arc with no mass
    auto bump = [](double th) { return cplx(std::sin(th - 2.0) * std::sin(3.5 - th), 0); };
    CHECK(std::abs(d.stieltjes(bump, 2.0, 3.5)) < 1e-14);
    // psi vanishing at the ends: the node sum
    auto psi = [](double th) { return cplx(std::sin(th - 0.2) * std::sin(2.0 - th), th); };
    cplx direct = psi(0.5) * cplx(1, 0) + psi(1.5) * cplx(0, 2);
    CHECK(std::abs(d.stieltjes(psi, 0.2, 2.0) - direct) < 1e-6);
    // periodic increment of the cumulative function
    for (double th : {0.1, 1.0, 3.0, 5.0}) CHECK(std::abs(d.cumulative(th + kTau) - d.cumulative(th) - d.total()) < 1e-15);
    CHECK(d.cumulative(0.0) == cplx(0, 0));
}

TEST_CASE("otal transform on a single node") {
    auto d = BoundaryDistribution::single(1.0, cplx(0.5, 2.0));
    EigenfunctionField ef(d);
    CHECK(otal_transform(ef, 10, 0.0) == cplx(0, 0));
    cplx o10 = otal_transform(ef, 10, kTau), o12 = otal_transform(ef, 12, kTau);
    CHECK(std::abs(o12 - o10) / std::abs(o12) < 5e-2);
    // increments concentrate on the arc holding the node
    std::vector<double> b;
    for (int i = 0; i < 16; ++i) b.push_back(i * kTau / 16 + 0.05);
    auto rt = round_trip(ef, b, {12.0, 24.0});
    CHECK(rt.shape_error[0] < 0.1);
    CHECK(rt.shape_error[1] <= rt.shape_error[0]);
    // full circle / f(0) is the fitted constant
    CHECK(std::abs(o12 / ef.f(0.0) - rt.c[0]) / std::abs(rt.c[0]) < 1e-3);
}

TEST_CASE("round trip rejects an empty distribution") {
    auto d = BoundaryDistribution::from_masses({1.0}, {cplx(0, 0)}, 0.5);
    EigenfunctionField ef(d);
    CHECK_THROWS_AS(round_trip(ef, {0.0, 2.0, 4.0}, {12.0}), DegenerateTransfer);
}

TEST_CASE("eigen distribution at a critical value") {
    const auto& P = pipe();
    auto zs = polygon_samples(P.group(), 1000, 2.3, 52);
    double prev_aut = 1e300, prev_eqv = 1e300;
    for (int N : {16, 24, 32}) {
        Collocation C(P.left_op(), N);
        double t = refine_minimum(C, kT1 - 1e-3, kT1 + 1e-3);
        cplx s(0.5, t);
        auto sp = C.eigenpair(s);
        auto d = BoundaryDistribution::from_nodes(C, sp.left, s);
        EigenfunctionField ef(d);
        double aut = automorphy_metric(ef, P.group().gens, zs, 2.3);
        CHECK(std::max(aut, 1e-10) <= std::max(prev_aut, 1e-10));
        prev_aut = aut;
        double eqv = 0, scale = 0;
        const auto& T = P.system().left;
        for (int k = 0; k < T.arcs(); ++k) {
            auto e = equivariance(d, T, P.group().gens[T.partition().gen[k]], k, [](double) { return cplx(1, 0); });
            eqv = std::max(eqv, std::abs(e.lhs - e.rhs));
            scale = std::max(scale, std::abs(e.rhs));
            auto id = equivariance(d, T, Mobius::identity(), k, [](double th) { return unit(th); });
            CHECK(std::abs(id.lhs - id.rhs) == 0.0);
        }
        CHECK(std::max(eqv / scale, 1e-10) <= std::max(prev_eqv, 1e-10));
        prev_eqv = eqv / scale;
        if (N == 32) {
            CHECK(aut < 1e-2);
            CHECK(eqv / scale < 1e-2);
            // homogeneous in nu
            auto d2 = BoundaryDistribution::from_nodes(C, sp.left * cplx(0.2, 3.0), s);
            CHECK(std::abs(automorphy_metric(EigenfunctionField(d2), P.group().gens, zs, 2.3) - aut) < 1e-12);
            double h1 = holder_half_constant(d, 1e-3), h2 = holder_half_constant(d, 2e-3);
            CHECK(std::isfinite(h1));
            CHECK(h1 < 1.0);
            CHECK(h1 >= h2);
        }
        // random weights are neither automorphic nor equivariant
        if (N == 16) {
            std::mt19937_64 rng(53);
            std::normal_distribution<double> G;
            CVector nu(C.dim());
            for (int i = 0; i < nu.size(); ++i) nu[i] = cplx(G(rng), G(rng));
            auto dr = BoundaryDistribution::from_nodes(C, nu, s);
            CHECK(automorphy_metric(EigenfunctionField(dr), P.group().gens, zs, 2.3) > 0.1);
            double ev = 0, sc = 0;
            for (int k = 0; k < T.arcs(); ++k) {
                auto e = equivariance(dr, T, P.group().gens[T.partition().gen[k]], k, [](double) { return cplx(1, 0); });
                ev = std::max(ev, std::abs(e.lhs - e.rhs));
                sc = std::max(sc, std::abs(e.rhs));
            }
            CHECK(ev / sc > 0.1);
        }
    }
}

TEST_CASE("equivariance needs an admissible map") {
    const auto& P = pipe();
    auto d = BoundaryDistribution::single(0.3, 0.5);
    CHECK_THROWS_AS(equivariance(d, P.system().left, Mobius::translation_real(0.2), 0, [](double) { return cplx(1); }),
                    DomainError);
}
