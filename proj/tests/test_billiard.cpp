#include <doctest.h>

#include <cmath>
#include <random>

#include "bsl/billiard.hpp"
#include "bsl/errors.hpp"
#include "bsl/suite.hpp"

using namespace bsl;

namespace {
struct Fixture {
    FuchsianGroup g = build_regular_4g_gon(2);
    BoundarySystem S = build_boundary_system(g);
};
const Fixture& fx() {
    static Fixture f;
    return f;
}

// distance of z from the complete geodesic through u and v, measured on the orthogonal circle
double off_side(cplx z, cplx u, cplx v) {
    Mobius m = Mobius::translation_to(u);
    cplx vp = m.inverse().apply(v), zp = m.inverse().apply(z);
    // after moving u to 0 the side is a diameter
    return std::abs((zp * std::conj(vp / std::abs(vp))).imag());
}
} // namespace

TEST_CASE("diameter through opposite side midpoints") {
    const auto& g = fx().g;
    double mid = std::tanh(octagon_constants().apothem / 2);
    for (int j = 0; j < 8; ++j) {
        double a = (2 * j + 1) * kPi / 8;
        auto c = crossing_points(g, {a, wrap_angle(a + kPi)});
        CHECK(std::abs(c.exit - mid * unit(a)) < 1e-12);
        CHECK(std::abs(c.entry - mid * unit(a + kPi)) < 1e-12);
        CHECK(c.exit_side == j);
        CHECK(c.entry_side == g.pair(j));
        CHECK_FALSE(c.tangent);
    }
}

TEST_CASE("crossings lie on the polygon boundary") {
    const auto& g = fx().g;
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        auto pt = sample_section_point(g, rng);
        auto c = crossing_points(g, pt);
        int n = g.sides();
        CHECK(off_side(c.exit, g.vertices[c.exit_side], g.vertices[(c.exit_side + 1) % n]) < 1e-10);
        CHECK(off_side(c.entry, g.vertices[c.entry_side], g.vertices[(c.entry_side + 1) % n]) < 1e-10);
        CHECK(c.t_exit > c.t_entry);
    }
}

TEST_CASE("geodesic touching a corner") {
    const auto& g = fx().g;
    // geodesic through vertex 0 perpendicular to the radius meets the polygon only there
    cplx v = g.vertices[0];
    Mobius m = Mobius::translation_to(v);
    double x = m.apply_angle(kPi / 2), y = m.apply_angle(-kPi / 2);
    auto c = crossing_points(g, {x, y});
    CHECK(c.tangent);
    CHECK(std::abs(c.exit - c.entry) < 1e-9);
    CHECK(std::abs(c.exit - v) < 1e-9);
}

TEST_CASE("billiard round trip and entry point") {
    const auto& g = fx().g;
    std::mt19937_64 rng(22);
    double round = 0, entry = 0;
    for (int i = 0; i < 10000; ++i) {
        auto pt = sample_section_point(g, rng);
        auto c = crossing_points(g, pt);
        auto nx = billiard_apply(g, pt);
        auto back = billiard_inverse(g, nx);
        round = std::max({round, circular_distance(back.x, pt.x), circular_distance(back.y, pt.y)});
        auto cn = crossing_points(g, nx);
        entry = std::max(entry, std::abs(cn.entry - g.gens[c.exit_side].apply(c.exit)));
        CHECK(cn.entry_side == g.pair(c.exit_side));
    }
    CHECK(round < 1e-12);
    CHECK(entry < 1e-10);
}

TEST_CASE("group ball") {
    const auto& g = fx().g;
    GroupBall ball(g, 3);
    for (auto& m : g.gens) {
        const Mobius* e = ball.find(m);
        REQUIRE(e);
        CHECK(e->word.size() == 1);
    }
    Mobius w = compose(g.gens[1], g.gens[6]);
    const Mobius* e = ball.find(w);
    REQUIRE(e);
    CHECK(e->word.size() <= 2);
    CHECK(matrix_distance(*e, w) < 1e-9);
    CHECK(ball.find(Mobius::translation_real(0.123)) == nullptr);
}

TEST_CASE("conjugacy on sampled points") {
    const auto& f = fx();
    auto rep = verify_conjugacy(f.g, f.S.baker, 1000, 23, 8);
    CHECK(rep.ok);
    CHECK(rep.samples == 1000);
    CHECK(rep.max_word <= 2);   // regression value for the octagon
    CHECK(rep.conjugacy_error < 1e-10);
    CHECK(rep.cohomology_L < 1e-10);
    CHECK(rep.cohomology_R < 1e-10);
}

TEST_CASE("rho is the identity on anchor crossings") {
    const auto& f = fx();
    Conjugacy C(f.g, f.S.left, &f.S.baker);
    std::mt19937_64 rng(24);
    int anchors = 0;
    for (int i = 0; i < 300; ++i) {
        auto pt = sample_section_point(f.g, rng);
        if (!C.is_anchor(crossing_points(f.g, pt))) continue;
        ++anchors;
        auto r = C.rho(pt);
        CHECK(r.walk == 0);
        CHECK(matrix_distance(r.rho, Mobius::identity()) < 1e-12);
    }
    CHECK(anchors > 0);
}

TEST_CASE("identity rho is not a conjugacy") {
    const auto& f = fx();
    CHECK(identity_rho_deviation(f.g, f.S.baker, 300, 25) > 0.1);
}

TEST_CASE("seeded incidence matches the pruned route") {
    const auto& f = fx();
    auto B = build_baker(f.S.left, f.S.right, 2000, 7);
    CHECK(B.J == f.S.baker.J);
}

TEST_CASE("orbit rows") {
    const auto& f = fx();
    std::mt19937_64 rng(26);
    auto rows = billiard_orbit(f.g, f.S.baker, sample_section_point(f.g, rng), 50);
    REQUIRE(rows.size() == 50);
    for (size_t i = 1; i < rows.size(); ++i) {
        auto nx = billiard_apply(f.g, rows[i - 1].pt);
        CHECK(circular_distance(nx.x, rows[i].pt.x) < 1e-13);
        CHECK(rows[i].rho_length <= 8);
    }
}
