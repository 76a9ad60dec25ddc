#include "bsl/billiard.hpp"
#include "bsl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bsl {

BilliardCrossing crossing_points(const FuchsianGroup& g, const SectionPoint& pt) {
    Chord chord{pt.y, pt.x};
    Mobius F = chord_frame(chord);
    Mobius Wi = F.inverse();
    int n = g.sides();
    std::vector<std::pair<double, int>> hits;
    bool along_side = false;
    for (int j = 0; j < n; ++j) {
        cplx u = g.vertices[j], v = g.vertices[(j + 1) % n];
        cplx p = Wi.apply(u), q = Wi.apply(v);
        if (std::abs(p.imag()) < 1e-12 && std::abs(q.imag()) < 1e-12) {
            along_side = true;
            continue;
        }
        if (p.imag() * q.imag() > 0) continue;
        double pos;
        if (chord_line_crossing(Wi, u, v, pos)) hits.push_back({pos, j});
    }
    if (hits.empty()) throw DomainError("geodesic misses the fundamental polygon");

    BilliardCrossing c;
    double tmax = -1e300, tmin = 1e300;
    for (auto& h : hits) {
        tmax = std::max(tmax, h.first);
        tmin = std::min(tmin, h.first);
    }
    c.t_exit = tmax;
    c.t_entry = tmin;
    c.exit = F.apply(std::tanh(tmax / 2));
    c.entry = F.apply(std::tanh(tmin / 2));
    // at a corner: exit lies in the left-closed side, entry in the right-closed one
    for (auto& h : hits) {
        if (h.first < tmax - 1e-10) continue;
        bool at_right_end = std::abs(c.exit - g.vertices[(h.second + 1) % n]) < 1e-9;
        if (c.exit_side < 0 || (!at_right_end && std::abs(c.exit - g.vertices[c.exit_side]) > 1e-9 &&
                                 std::abs(c.exit - g.vertices[(c.exit_side + 1) % n]) < 1e-9))
            c.exit_side = h.second;
    }
    for (auto& h : hits) {
        if (h.first > tmin + 1e-10) continue;
        bool at_left_end = std::abs(c.entry - g.vertices[h.second]) < 1e-9;
        if (c.entry_side < 0 || (!at_left_end && std::abs(c.entry - g.vertices[c.entry_side]) < 1e-9))
            c.entry_side = h.second;
    }
    c.tangent = along_side || tmax - tmin < 1e-10;
    return c;
}

SectionPoint billiard_apply(const FuchsianGroup& g, const SectionPoint& pt) {
    const Mobius& a = g.gens[crossing_points(g, pt).exit_side];
    return {a.apply_angle(pt.x), a.apply_angle(pt.y)};
}

SectionPoint billiard_inverse(const FuchsianGroup& g, const SectionPoint& pt) {
    const Mobius& a = g.gens[crossing_points(g, pt).entry_side];
    return {a.apply_angle(pt.x), a.apply_angle(pt.y)};
}

SectionPoint sample_section_point(const FuchsianGroup& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double R = 0;
    for (auto v : g.vertices) R = std::max(R, std::abs(v));
    auto inside = [&]() {
        for (;;) {
            cplx z = std::polar(R * std::sqrt(U(rng)), kTau * U(rng));
            if (g.contains(z, 1e-9)) return z;
        }
    };
    for (;;) {
        cplx z1 = inside(), z2 = inside();
        if (std::abs(z1 - z2) < 1e-6) continue;
        Mobius T = Mobius::translation_to(z1);
        cplx w = T.inverse().apply(z2);
        cplx d = w / std::abs(w);
        SectionPoint pt{angle_of(T.apply(d)), angle_of(T.apply(-d))};
        if (!crossing_points(g, pt).tangent) return pt;
    }
}

std::int64_t GroupBall::key(const Mobius& m) {
    double ra = m.a.real() < 0 ? -m.a.real() : m.a.real();
    return std::llround(ra * 1e3);
}

GroupBall::GroupBall(const FuchsianGroup& g, int radius) : radius_(radius) {
    auto add = [&](const Mobius& m) {
        if (find(m, 1e-8)) return false;
        index_.emplace(key(m), elems_.size());
        elems_.push_back(m);
        return true;
    };
    std::vector<std::pair<Mobius, int>> frontier;   // element, last generator
    add(Mobius::identity());
    frontier.push_back({Mobius::identity(), -1});
    for (int len = 1; len <= radius; ++len) {
        std::vector<std::pair<Mobius, int>> next;
        for (auto& [m, last] : frontier)
            for (int j = 0; j < g.sides(); ++j) {
                if (last >= 0 && j == g.pair(last)) continue;
                Mobius m2 = compose(m, g.gens[j]);
                if (add(m2)) next.push_back({m2, j});
            }
        frontier = std::move(next);
    }
}

const Mobius* GroupBall::find(const Mobius& m, double tol) const {
    std::int64_t k = key(m);
    for (std::int64_t kk = k - 1; kk <= k + 1; ++kk) {
        auto range = index_.equal_range(kk);
        for (auto it = range.first; it != range.second; ++it)
            if (matrix_distance(elems_[it->second], m) < tol) return &elems_[it->second];
    }
    return nullptr;
}

Conjugacy::Conjugacy(const FuchsianGroup& g, const BowenSeriesMap& left, const BakerSystem* baker, int ball_radius)
    : g_(g), left_(left), baker_(baker), ball_(g, ball_radius) {}

bool Conjugacy::is_anchor(const BilliardCrossing& c) const {
    int n = g_.sides();
    int d = ((c.exit_side - c.entry_side) % n + n) % n;
    d = std::min(d, n - d);
    return !c.tangent && d >= n / 2 - 1;
}

ConjugacyResult Conjugacy::rho(const SectionPoint& pt, int max_word, int max_walk) const {
    std::vector<SectionPoint> st{pt};
    std::vector<BilliardCrossing> cr{crossing_points(g_, pt)};
    while (!is_anchor(cr.back())) {
        if (static_cast<int>(st.size()) > max_walk)
            throw ConjugacySearchFailure("no anchor crossing on the backward billiard orbit");
        const Mobius& a = g_.gens[cr.back().entry_side];
        st.push_back({a.apply_angle(st.back().x), a.apply_angle(st.back().y)});
        cr.push_back(crossing_points(g_, st.back()));
    }
    Mobius m;
    for (size_t t = st.size() - 1; t >= 1; --t) {
        double px = m.apply_angle(st[t].x);
        const Mobius& gk = left_.generator(px);
        Mobius next = compose(compose(gk, m), g_.gens[cr[t].exit_side].inverse());
        const Mobius* e = ball_.find(next);
        if (!e) throw ConjugacySearchFailure("cocycle left the searched ball of group words");
        m = *e;
    }
    ConjugacyResult r;
    r.rho = m;
    r.word_length = static_cast<int>(m.word.size());
    r.walk = static_cast<int>(st.size()) - 1;
    r.image = {m.apply_angle(pt.x), m.apply_angle(pt.y)};
    if (r.word_length > max_word) {
        std::ostringstream os;
        os << "shortest word for rho has length " << r.word_length << " > " << max_word;
        throw ConjugacySearchFailure(os.str());
    }
    if (baker_ && !baker_->in_sigma(r.image.x, r.image.y))
        throw ConjugacySearchFailure("conjugated point outside the baker domain");
    return r;
}

std::string ConjugacyReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "conjugacy samples=" << samples << " max_word=" << max_word << " max_walk=" << max_walk
       << " conj_err=" << conjugacy_error << " coh_L=" << cohomology_L << " coh_R=" << cohomology_R
       << " not_in_sigma=" << not_in_sigma << (ok ? " ok" : " FAIL");
    return os.str();
}

ConjugacyReport verify_conjugacy(const FuchsianGroup& g, const BakerSystem& B, int samples, std::uint64_t seed,
                                 int max_word) {
    Conjugacy C(g, B.left, &B);
    std::mt19937_64 rng(seed);
    ConjugacyReport rep;
    for (int s = 0; s < samples; ++s) {
        SectionPoint pt = sample_section_point(g, rng);
        auto cr = crossing_points(g, pt);
        SectionPoint bp = billiard_apply(g, pt);
        ConjugacyResult r, rb;
        try {
            r = C.rho(pt, max_word);
            rb = C.rho(bp, max_word);
        } catch (const ConjugacySearchFailure&) {
            ++rep.not_in_sigma;
            continue;
        }
        ++rep.samples;
        rep.max_word = std::max({rep.max_word, r.word_length, rb.word_length});
        rep.max_walk = std::max(rep.max_walk, r.walk);
        auto t = B.apply(r.image.x, r.image.y);
        rep.conjugacy_error = std::max({rep.conjugacy_error, circular_distance(t.first, rb.image.x),
                                        circular_distance(t.second, rb.image.y)});
        const Mobius& gB = g.gens[cr.exit_side];
        rep.cohomology_L = std::max(rep.cohomology_L,
                                    matrix_distance(compose(B.gamma_L(r.image.x), r.rho), compose(rb.rho, gB)));
        rep.cohomology_R = std::max(rep.cohomology_R, matrix_distance(compose(B.gamma_R(rb.image.y), rb.rho),
                                                                      compose(r.rho, gB.inverse())));
    }
    rep.ok = rep.not_in_sigma == 0 && rep.max_word <= max_word && rep.conjugacy_error < 1e-10 &&
             rep.cohomology_L < 1e-10 && rep.cohomology_R < 1e-10;
    return rep;
}

double identity_rho_deviation(const FuchsianGroup& g, const BakerSystem& B, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        SectionPoint pt = sample_section_point(g, rng);
        const Mobius& gB = g.gens[crossing_points(g, pt).exit_side];
        worst = std::max(worst, matrix_distance(B.gamma_L(pt.x), gB));
    }
    return worst;
}

Incidence seed_incidence(const FuchsianGroup& g, const BowenSeriesMap& L, const BowenSeriesMap& R, int samples,
                         int steps, std::uint64_t seed) {
    int q = L.arcs();
    Incidence J(q, std::vector<std::uint8_t>(q, 0));
    Conjugacy C(g, L, nullptr);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        SectionPoint pt = sample_section_point(g, rng);
        SectionPoint sig = C.rho(pt, 64).image;
        for (int t = 0; t < steps; ++t) {
            J[L.partition().arc_of(sig.x)][R.partition().arc_of(sig.y)] = 1;
            const Mobius& a = L.generator(sig.x);
            sig = {a.apply_angle(sig.x), a.apply_angle(sig.y)};
        }
    }
    return prune_incidence(L, R, J);
}

BakerSystem build_baker(const BowenSeriesMap& L, const BowenSeriesMap& R, int samples, std::uint64_t seed) {
    Incidence primary = seed_incidence(L.group(), L, R, samples, 40, seed);
    Incidence secondary = prune_incidence(L, R, initial_incidence(L.arcs()));
    if (primary != secondary) {
        std::ostringstream os;
        os << "incidence routes disagree: geometric seeding has " << count_ones(primary)
           << " rectangles, pruning has " << count_ones(secondary);
        throw BakerConstruction(os.str());
    }
    return assemble_baker(L, R, secondary);
}

std::vector<OrbitRow> billiard_orbit(const FuchsianGroup& g, const BakerSystem& B, SectionPoint start, int steps) {
    Conjugacy C(g, B.left, &B);
    std::vector<OrbitRow> rows;
    SectionPoint pt = start;
    for (int s = 0; s < steps; ++s) {
        auto cr = crossing_points(g, pt);
        rows.push_back({s, pt, cr.exit_side, C.rho(pt).word_length});
        pt = billiard_apply(g, pt);
    }
    return rows;
}

} // namespace bsl
