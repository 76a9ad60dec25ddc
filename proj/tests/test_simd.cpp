#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bsl/errors.hpp"
#include "bsl/helgason.hpp"
#include "bsl/simd.hpp"

using namespace bsl;
using simd::Isa;

namespace {
constexpr double kEps = 2.220446049250313e-16;
struct Data {
    std::vector<double> x, c, wre, wim;
};
Data make_data(size_t n, double xlo, double xhi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> X(xlo, xhi);
    std::normal_distribution<double> G;
    Data d;
    for (size_t i = 0; i < n; ++i) {
        d.x.push_back(X(rng));
        d.c.push_back(G(rng));
        d.wre.push_back(G(rng));
        d.wim.push_back(G(rng));
    }
    return d;
}
double rel(cplx a, cplx b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); }
} // namespace

TEST_CASE("dispatch") {
    CHECK(simd::available(Isa::Scalar));
    CHECK(std::string(simd::name(Isa::Scalar)) == "scalar");
    Isa before = simd::active();
    simd::force(Isa::Scalar);
    CHECK(simd::active() == Isa::Scalar);
    simd::force(before);
    if (!simd::available(Isa::Avx2)) CHECK_THROWS_AS(simd::force(Isa::Avx2), ConfigError);
}

TEST_CASE("power sums: avx2 matches scalar") {
    if (!simd::available(Isa::Avx2)) return;
    double worst = 0;
    for (size_t n : {0, 1, 3, 4, 5, 17, 64, 1000, 1537}) {
        for (auto [lo, hi] : {std::pair{-5.0, 2.0}, std::pair{-40.0, 0.0}, std::pair{-800.0, -600.0}}) {
            auto d = make_data(n, lo, hi, n + 7);
            for (cplx s : {cplx(0.5, 0), cplx(0.5, 9.88), cplx(1.0, -3.0), cplx(0.5, 300.0)}) {
                auto a = simd::power_sums(Isa::Scalar, n, d.x.data(), d.c.data(), d.wre.data(), d.wim.data(), s);
                auto b = simd::power_sums(Isa::Avx2, n, d.x.data(), d.c.data(), d.wre.data(), d.wim.data(), s);
                // scale: sum of term moduli
                double sc0 = 0, sc1 = 0;
                for (size_t i = 0; i < n; ++i) {
                    double m = std::hypot(d.wre[i], d.wim[i]) * std::exp(s.real() * d.x[i]);
                    sc0 += m;
                    sc1 += m * std::abs(d.c[i]);
                }
                if (sc0 == 0) {
                    CHECK(a.s0 == b.s0);
                    continue;
                }
                worst = std::max(worst, std::max(rel(a.s0, b.s0, sc0), rel(a.s1, b.s1, sc1)));
                auto z = simd::power_sums(Isa::Avx2, n, d.x.data(), nullptr, d.wre.data(), d.wim.data(), s);
                CHECK(z.s1 == cplx(0, 0));
                CHECK(rel(z.s0, a.s0, sc0) < 1e-14);
            }
        }
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("cexp: avx2 matches scalar pointwise") {
    if (!simd::available(Isa::Avx2)) return;
    auto d = make_data(1003, -30, 3, 5);
    d.x[0] = 0;
    d.x[1] = -745;
    d.x[2] = 700 / 0.5;
    std::vector<double> ar(1003), ai(1003), br(1003), bi(1003);
    for (cplx s : {cplx(0.5, 1.0), cplx(0.5, -25.0), cplx(0.1, 1e3)}) {
        simd::cexp(Isa::Scalar, d.x.size(), d.x.data(), s, ar.data(), ai.data());
        simd::cexp(Isa::Avx2, d.x.size(), d.x.data(), s, br.data(), bi.data());
        for (size_t i = 0; i < d.x.size(); ++i) {
            cplx a(ar[i], ai[i]), b(br[i], bi[i]);
            double m = std::abs(a);
            if (m == 0 || !std::isfinite(m)) continue;
            CHECK(std::abs(a - b) / m < 1e-14);
        }
    }
}

TEST_CASE("poisson sums: avx2 matches scalar") {
    if (!simd::available(Isa::Avx2)) return;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0, kTau);
    std::normal_distribution<double> G;
    for (size_t n : {1, 6, 768, 1536}) {
        std::vector<double> sh, ch, wre, wim;
        for (size_t i = 0; i < n; ++i) {
            double e = U(rng);
            sh.push_back(std::sin(e / 2));
            ch.push_back(std::cos(e / 2));
            wre.push_back(G(rng));
            wim.push_back(G(rng));
        }
        for (double r : {0.0, 0.7, 4.0, 14.0, 30.0})
            for (double th : {0.0, 1.3, 5.9}) {
                cplx s(0.5, 7.0);
                auto a = simd::poisson_sums(Isa::Scalar, n, sh.data(), ch.data(), wre.data(), wim.data(), r, th, s);
                auto b = simd::poisson_sums(Isa::Avx2, n, sh.data(), ch.data(), wre.data(), wim.data(), r, th, s);
                // per-term rounding bound: sin((theta-eta)/2) carries an absolute error of a few ulp,
                // which near eta is amplified through log(d2) and then by |s|
                simd::PolarFrame fr(r, th);
                double bound0 = 0, bound1 = 0;
                for (size_t i = 0; i < n; ++i) {
                    double sd = fr.st * ch[i] - fr.ct * sh[i];
                    double d2 = fr.om * fr.om + 4.0 * fr.rho * sd * sd;
                    double x = fr.l1 - std::log(d2);
                    double c = -fr.rho - fr.omr2 * (2.0 * sd * sd - fr.om) / d2;
                    double dx = 4 * kEps * (1 + std::abs(x) + 8.0 * fr.rho * std::abs(sd) / d2);
                    double m = std::hypot(wre[i], wim[i]) * std::exp(s.real() * x);
                    bound0 += m * std::abs(s) * dx + m * 16 * kEps;
                    bound1 += (m * std::abs(s) * dx + m * 16 * kEps) * (std::abs(c) + fr.omr2 / d2 * 4 * kEps);
                }
                CHECK(std::abs(a.s0 - b.s0) <= 8 * bound0);
                CHECK(std::abs(a.s1 - b.s1) <= 8 * bound1 + 8 * bound0);
            }
    }
}

TEST_CASE("synthesized field is the same under either instruction set") {
    if (!simd::available(Isa::Avx2)) return;
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> U(0, kTau);
    std::normal_distribution<double> G;
    std::vector<double> eta;
    std::vector<cplx> nu;
    for (int i = 0; i < 300; ++i) {
        eta.push_back(U(rng));
        nu.push_back(cplx(G(rng), G(rng)));
    }
    EigenfunctionField ef(BoundaryDistribution::from_masses(eta, nu, cplx(0.5, 4.2)));
    Isa before = simd::active();
    std::vector<cplx> a, b;
    for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
        simd::force(isa);
        auto& out = isa == Isa::Scalar ? a : b;
        for (int i = 0; i < 40; ++i) {
            cplx f, df;
            ef.polar(0.3 * i, 0.77 * i, f, df);
            out.push_back(f);
            out.push_back(df);
        }
    }
    simd::force(before);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
}
