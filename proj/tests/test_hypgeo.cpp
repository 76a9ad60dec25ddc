#include <doctest.h>

#include <cmath>
#include <random>

#include "bsl/errors.hpp"
#include "bsl/hypgeo.hpp"

using namespace bsl;

namespace {
Mobius random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0, 1);
    cplx z0 = std::polar(0.9 * std::sqrt(U(rng)), kTau * U(rng));
    return compose(Mobius::translation_to(z0), Mobius::rotation(kTau * U(rng)));
}
cplx random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0, 1);
    return std::polar(0.9 * std::sqrt(U(rng)), kTau * U(rng));
}
} // namespace

TEST_CASE("mobius apply") {
    CHECK(std::abs(Mobius::identity().apply({0.3, 0.2}) - cplx(0.3, 0.2)) < 1e-15);
    Mobius rot;
    rot.a = std::polar(1.0, kPi / 4);
    CHECK(std::abs(rot.apply(0.5) - cplx(0, 0.5)) < 1e-15);
    CHECK(std::abs(Mobius::rotation(kPi / 2).apply(0.5) - cplx(0, 0.5)) < 1e-15);
    CHECK(Mobius::translation_real(1.0).apply(0.0).real() == doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
    CHECK(std::abs(Mobius::translation_real(1.0).apply(0.0) - 0.46211715726000974) < 1e-15);
}

TEST_CASE("mobius validate rejects non-unit determinant") {
    Mobius m;
    m.a = 2.0;
    CHECK_THROWS_AS(m.validate(), InvalidMap);
    CHECK_NOTHROW(Mobius::translation_to({0.3, -0.4}).validate());
}

TEST_CASE("compose and inverse") {
    std::mt19937_64 rng(1);
    Mobius m = random_map(rng);
    CHECK(matrix_distance(compose(m, Mobius::identity()), m) < 1e-15);
    CHECK(matrix_distance(compose(m, m.inverse()), Mobius::identity()) < 1e-12);
    Mobius t3 = compose(Mobius::translation_real(1), Mobius::translation_real(2));
    CHECK(std::abs(t3.a - std::cosh(1.5)) < 1e-12);
    CHECK(matrix_distance(t3, Mobius::translation_real(3)) < 1e-12);
    Mobius neg;
    neg.a = -m.a;
    neg.b = -m.b;
    CHECK(matrix_distance(neg, m) == 0.0);
}

TEST_CASE("word bookkeeping") {
    Mobius g = Mobius::translation_real(1);
    g.word = {1};
    Mobius h = Mobius::rotation(1);
    h.word = {-3};
    CHECK(compose(g, h).word == std::vector<int>{1, -3});
    CHECK(compose(g, h).inverse().word == std::vector<int>{3, -1});
}

TEST_CASE("boundary derivative") {
    CHECK(Mobius::identity().boundary_derivative(unit(0.7)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Mobius::rotation(1.1).boundary_derivative(unit(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(Mobius::translation_real(1.0).boundary_derivative(1.0) - std::exp(-1.0)) < 1e-14);
    CHECK(std::abs(Mobius::translation_real(1.0).boundary_derivative(-1.0) - std::exp(1.0)) < 1e-13);
}

TEST_CASE("hyperbolic distance") {
    CHECK(hyperbolic_distance({0.2, 0.1}, {0.2, 0.1}) == 0.0);
    CHECK(std::abs(hyperbolic_distance(0.0, std::tanh(1.25) * unit(1.0)) - 2.5) < 1e-13);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        Mobius g = random_map(rng);
        cplx z = random_point(rng), w = random_point(rng);
        CHECK(std::abs(hyperbolic_distance(g.apply(z), g.apply(w)) - hyperbolic_distance(z, w)) < 1e-11);
    }
}

TEST_CASE("busemann") {
    CHECK(busemann(unit(0.3), 0.0, 0.0) == 0.0);
    CHECK(std::abs(busemann(1.0, 0.0, std::tanh(1.0)) - 2.0) < 1e-14);
    CHECK(std::abs(busemann(1.0, 0.0, std::tanh(1.0)) - std::log(poisson_kernel(std::tanh(1.0), 1.0))) < 1e-14);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, kTau);
    for (int i = 0; i < 200; ++i) {
        cplx xi = unit(U(rng)), u = random_point(rng), v = random_point(rng), w = random_point(rng);
        CHECK(std::abs(busemann(xi, u, w) - busemann(xi, u, v) - busemann(xi, v, w)) < 1e-12);
    }
}

TEST_CASE("poisson kernel") {
    CHECK(poisson_kernel(0.0, unit(2.2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(poisson_kernel(0.5, 1.0) - 3.0) < 1e-15);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0, kTau);
    for (int i = 0; i < 200; ++i) {
        Mobius g = random_map(rng);
        cplx z = random_point(rng), xi = unit(U(rng));
        cplx gxi = g.apply(xi);
        gxi /= std::abs(gxi);
        double lhs = poisson_kernel(g.apply(z), gxi) * g.boundary_derivative(xi);
        CHECK(std::abs(lhs - poisson_kernel(z, xi)) / poisson_kernel(z, xi) < 1e-12);
    }
}

TEST_CASE("gromov") {
    CHECK(gromov_sq(unit(0.4), unit(0.4)) == 0.0);
    CHECK(std::abs(gromov_sq(1.0, -1.0) - 1.0) < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, kTau), V(-4, 4);
    for (int i = 0; i < 200; ++i) {
        double a = U(rng), b = U(rng);
        Chord c{b, a};
        cplx z = chord_point_at(c, V(rng));
        double e = std::exp(-busemann(unit(a), 0.0, z) - busemann(unit(b), 0.0, z));
        CHECK(std::abs(e - gromov_sq(unit(a), unit(b))) < 1e-12);
    }
}

TEST_CASE("chord nearest point") {
    CHECK(std::abs(chord_point_nearest_origin({kPi, 0.0})) < 1e-15);
    cplx z = chord_point_nearest_origin({-kPi / 3, kPi / 3});
    CHECK(std::abs(z - (2.0 - std::sqrt(3.0))) < 1e-14);
    // isometry carries the nearest point onto the image geodesic
    std::mt19937_64 rng(6);
    Mobius g = random_map(rng);
    Chord c{0.4, 2.9};
    cplx gz = g.apply(chord_point_nearest_origin(c));
    Chord gc{g.apply_angle(c.backward), g.apply_angle(c.forward)};
    Mobius fi = chord_frame(gc).inverse();
    CHECK(std::abs(fi.apply(gz).imag()) < 1e-12);
}

TEST_CASE("chord frame") {
    Chord c{1.0, 4.0};
    Mobius f = chord_frame(c);
    CHECK(std::abs(f.apply(1.0) - unit(4.0)) < 1e-12);
    CHECK(std::abs(f.apply(-1.0) - unit(1.0)) < 1e-12);
    CHECK(std::abs(f.apply(0.0) - chord_point_nearest_origin(c)) < 1e-14);
}
