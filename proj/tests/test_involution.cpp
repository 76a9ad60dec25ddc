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
} // namespace

TEST_CASE("kernel values") {
    const auto& K = pipe().kernel();
    const auto& B = pipe().baker();
    // antipodal pair: the chord is a diameter and W vanishes
    CHECK(std::abs(K.W(0.0, kPi)) < 1e-14);
    CHECK(std::abs(K.W(1.3, 1.3 + kPi)) < 1e-14);
    double k = K.kernel(0.0, kPi);
    CHECK(std::abs(k - (B.in_sigma(0.0, kPi) ? 1.0 : 0.0)) < 1e-14);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(0, kTau);
    int off = 0;
    for (int i = 0; i < 2000; ++i) {
        double xi = U(rng), eta = U(rng);
        CHECK(std::abs(K.W(xi, eta) - K.W(eta, xi)) < 1e-12);
        double expected = B.in_sigma(xi, eta) ? 4.0 / std::norm(unit(xi) - unit(eta)) : 0.0;
        CHECK(std::abs(K.kernel(xi, eta) - expected) <= 1e-12 * std::max(1.0, expected));
        CHECK(std::abs(K.kernel_pow(xi, eta, 0.0) - (B.in_sigma(xi, eta) ? 1.0 : 0.0)) < 1e-15);
        if (!B.in_sigma(xi, eta)) ++off;
    }
    CHECK(off > 0);
}

TEST_CASE("W does not depend on the point of the geodesic") {
    const auto& K = pipe().kernel();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(0, kTau), V(-3, 3);
    for (int i = 0; i < 500; ++i) {
        double xi = U(rng), eta = U(rng);
        if (circular_distance(xi, eta) < 1e-3) continue;
        cplx z = chord_point_at({eta, xi}, V(rng));
        double w = busemann(unit(xi), 0.0, z) + busemann(unit(eta), 0.0, z);
        CHECK(std::abs(w - K.W(xi, eta)) < 1e-12);
    }
}

TEST_CASE("involution identity") {
    const auto& K = pipe().kernel();
    auto rep = verify_involution_identity(K, 10000, 43);
    CHECK(rep.ok);
    CHECK(rep.max_residual < 1e-10);
    InvolutionKernel scaled(pipe().baker(), 3.0);
    auto rs = verify_involution_identity(scaled, 10000, 43);
    CHECK(std::abs(rs.max_residual - rep.max_residual) < 1e-13);
}

TEST_CASE("wrong kernel violates the identity") {
    const auto& K = pipe().kernel();
    auto rep = verify_involution_identity(K, 2000, 44, [](double x, double y) {
        return -std::log(std::abs(unit(x) - unit(y)));
    });
    CHECK_FALSE(rep.ok);
    CHECK(rep.max_residual > 1e-3);
}

TEST_CASE("operator duality") {
    const auto& K = pipe().kernel();
    for (cplx s : {cplx(0.5, 0), cplx(0.5, 5)}) {
        auto rep = verify_duality(K, s, 1000, 45);
        CHECK(rep.ok);
        CHECK(rep.max_residual < 1e-10);
    }
}

TEST_CASE("corrupted incidence breaks duality") {
    const auto& K = pipe().kernel();
    const auto& B = pipe().baker();
    Incidence J = B.J;
    for (int k = 0; k < B.arcs(); ++k) {
        int l = (B.QR[k].first + B.QR[k].second) % B.arcs();
        J[k][l] = 1;
    }
    auto rep = verify_duality(K, 0.5, 1000, 46, &J);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("kernel transfer of the dual eigenvector") {
    const auto& P = pipe();
    auto grid = uniform_grid(300);
    double prev = 1e300;
    for (int N : {16, 24, 32}) {
        Collocation CL(P.left_op(), N), CR(P.right_op(), N);
        double t = refine_minimum(CL, kT1 - 1e-3, kT1 + 1e-3);
        cplx s(0.5, t);
        auto sp = CR.eigenpair(s);
        auto kt = transfer_dual_to_eigenfunction(P.kernel(), CR, sp.left, s, grid);
        CHECK(kt.residual < 1e-4);
        CHECK(std::max(kt.residual, 1e-10) <= std::max(prev, 1e-10));
        prev = kt.residual;
        CHECK(kt.psi_sup > 1e-10 * sp.left.cwiseAbs().sum());
        if (N == 16) {
            cplx c(2.0, -1.5);
            auto k2 = transfer_dual_to_eigenfunction(P.kernel(), CR, sp.left * c, s, grid);
            CHECK(std::abs(k2.residual - kt.residual) < 1e-12);
            for (size_t i = 0; i < grid.size(); i += 37) CHECK(std::abs(k2.psi[i] - c * kt.psi[i]) < 1e-12);
        }
    }
}

TEST_CASE("kernel transfer negative controls") {
    const auto& P = pipe();
    Collocation CR(P.right_op(), 16);
    cplx s(0.5, kT1);
    std::mt19937_64 rng(47);
    std::normal_distribution<double> G;
    CVector nu(CR.dim());
    for (int i = 0; i < nu.size(); ++i) nu[i] = cplx(G(rng), G(rng));
    auto kt = transfer_dual_to_eigenfunction(P.kernel(), CR, nu, s, uniform_grid(200));
    CHECK(kt.residual > 0.1);
    CHECK_THROWS_AS(transfer_dual_to_eigenfunction(P.kernel(), CR, CVector::Zero(CR.dim()), s, uniform_grid(50)),
                    DegenerateTransfer);
}
