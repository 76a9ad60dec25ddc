#include "bsl/fuchsian.hpp"
#include "bsl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bsl {

namespace {

double circ_diff(double a, double b) {
    double d = wrap_angle(a - b);
    return std::min(d, kTau - d);
}

// endpoints of the complete geodesic through p, q; first lies beyond p
std::pair<double, double> line_endpoints(cplx p, cplx q) {
    Mobius T = Mobius::translation_to(p);
    cplx w = T.inverse().apply(q);
    cplx dir = w / std::abs(w);
    return {angle_of(T.apply(-dir)), angle_of(T.apply(dir))};
}

} // namespace

double FuchsianGroup::side_left_endpoint(int j) const {
    return line_endpoints(vertices[j], vertices[(j + 1) % sides()]).first;
}

double FuchsianGroup::side_right_endpoint(int j) const {
    return line_endpoints(vertices[j], vertices[(j + 1) % sides()]).second;
}

bool FuchsianGroup::contains(cplx z, double margin) const {
    double d0 = hyperbolic_distance(z, 0.0);
    for (const auto& g : gens)
        if (d0 > hyperbolic_distance(z, g.apply(0.0)) - margin) return false;
    return true;
}

OctagonConstants octagon_constants() {
    double c = 1.0 / std::tan(kPi / 8);
    OctagonConstants k;
    k.circumradius = std::acosh(c * c);
    k.apothem = std::acosh(c);
    k.euclid_vertex = std::tanh(k.circumradius / 2);
    return k;
}

FuchsianGroup build_regular_4g_gon(int genus) {
    if (genus != 2) {
        std::ostringstream os;
        os << "only the genus-2 octagon is built in (requested genus " << genus << ")";
        throw ConfigError(os.str());
    }
    const int n = 8;
    auto k = octagon_constants();
    FuchsianGroup g;
    g.genus = genus;
    for (int j = 0; j < n; ++j) g.vertices.push_back(std::polar(k.euclid_vertex, kTau * j / n));
    for (int j = 0; j < n; ++j) {
        double th = (2 * j + 1) * kPi / n;
        Mobius m;
        m.a = std::cosh(k.apothem);
        m.b = -std::sinh(k.apothem) * unit(th);
        m.word = {g.label(j)};
        g.gens.push_back(m);
    }
    return g;
}

FuchsianGroup group_from_generators(const std::vector<Mobius>& gens) {
    FuchsianGroup g = build_regular_4g_gon(2);
    if (gens.size() != g.gens.size()) throw ConfigError("expected 8 generators");
    for (size_t j = 0; j < gens.size(); ++j) {
        g.gens[j].a = gens[j].a;
        g.gens[j].b = gens[j].b;
    }
    return g;
}

Mobius vertex_relator(const FuchsianGroup& g) {
    int n = g.sides();
    Mobius r;
    int j = n - 1;
    for (int step = 0; step < n; ++step) {
        r = compose(r, g.gens[j]);
        j = ((j - 3) % n + n) % n;
    }
    return r;
}

std::vector<double> interior_angles(const FuchsianGroup& g) {
    int n = g.sides();
    std::vector<double> out;
    for (int j = 0; j < n; ++j) {
        Mobius Ti = Mobius::translation_to(g.vertices[j]).inverse();
        cplx p = Ti.apply(g.vertices[(j + 1) % n]);
        cplx q = Ti.apply(g.vertices[(j + n - 1) % n]);
        out.push_back(circ_diff(std::arg(p), std::arg(q)));
    }
    return out;
}

std::string PairingReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "pairing endpoint_err=" << endpoint_error << " inverse_err=" << inverse_error
       << " relator_err=" << relator_error << " angle_sum_err=" << angle_sum_error
       << " min_trace_excess=" << min_trace_excess << (ok ? " ok" : " FAIL");
    return os.str();
}

PairingReport verify_pairing(const FuchsianGroup& g, double tol) {
    PairingReport rep;
    int n = g.sides();
    rep.min_trace_excess = 1e300;
    for (int j = 0; j < n; ++j) {
        const Mobius& a = g.gens[j];
        int p = g.pair(j);
        double e = 0;
        e = std::max(e, circ_diff(a.apply_angle(g.side_left_endpoint(j)), g.side_right_endpoint(p)));
        e = std::max(e, circ_diff(a.apply_angle(g.side_right_endpoint(j)), g.side_left_endpoint(p)));
        e = std::max(e, std::abs(a.apply(g.vertices[j]) - g.vertices[(p + 1) % n]));
        e = std::max(e, std::abs(a.apply(g.vertices[(j + 1) % n]) - g.vertices[p]));
        e = std::max(e, std::abs(std::norm(a.a) - std::norm(a.b) - 1.0));
        rep.endpoint_error = std::max(rep.endpoint_error, e);
        rep.inverse_error =
            std::max(rep.inverse_error, matrix_distance(compose(a, g.gens[p]), Mobius::identity()));
        rep.min_trace_excess = std::min(rep.min_trace_excess, a.trace_abs() - 2.0);
    }
    rep.relator_error = matrix_distance(vertex_relator(g), Mobius::identity());
    double sum = 0;
    for (double a : interior_angles(g)) sum += a;
    rep.angle_sum_error = std::abs(sum - kTau);
    rep.ok = rep.endpoint_error <= tol && rep.inverse_error <= tol && rep.relator_error <= tol &&
             rep.angle_sum_error <= tol && rep.min_trace_excess > tol;
    return rep;
}

void check_pairing(const FuchsianGroup& g, double tol) {
    auto rep = verify_pairing(g, tol);
    if (!rep.ok) throw InvariantViolation("side pairing check failed", rep.text());
}

std::string EvenCornerReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "even-corner worst=" << worst << (ok ? " ok" : " FAIL");
    return os.str();
}

namespace {

struct Tile {
    Mobius g;
    std::vector<cplx> v;
};

Tile make_tile(const FuchsianGroup& G, const Mobius& g) {
    Tile t{g, {}};
    for (auto p : G.vertices) t.v.push_back(g.apply(p));
    return t;
}

// tiles sharing vertex B, grown from a seed tile by crossing sides incident to B
std::vector<Tile> star_of(const FuchsianGroup& G, const Tile& seed, cplx B, double tol) {
    int n = G.sides();
    std::vector<Tile> star{seed};
    for (size_t head = 0; head < star.size() && star.size() < 64; ++head) {
        Tile cur = star[head];
        for (int i = 0; i < n; ++i) {
            bool touches = std::abs(cur.v[i] - B) < tol || std::abs(cur.v[(i + 1) % n] - B) < tol;
            if (!touches) continue;
            Tile nb = make_tile(G, compose(cur.g, G.gens[G.pair(i)]));
            cplx c = nb.g.apply(0.0);
            bool seen = false;
            for (auto& t : star)
                if (std::abs(t.g.apply(0.0) - c) < 1e-9) seen = true;
            if (!seen) star.push_back(nb);
        }
    }
    return star;
}

double dist_to_line(const Mobius& frame_inv, cplx z) {
    cplx w = frame_inv.apply(z);
    return std::asinh(2.0 * std::abs(w.imag()) / (1.0 - std::norm(w)));
}

} // namespace

EvenCornerReport verify_even_corner(const FuchsianGroup& G, int depth, double tol) {
    EvenCornerReport rep;
    int n = G.sides();
    rep.worst_per_side.assign(n, 0.0);
    const double vtol = 1e-7;
    for (int k = 0; k < n; ++k) {
        Chord line{G.side_left_endpoint(k), G.side_right_endpoint(k)};
        Mobius Wi = chord_frame(line).inverse();
        for (int dir = 0; dir < 2; ++dir) {
            Tile tile = make_tile(G, Mobius::identity());
            cplx A = dir == 0 ? G.vertices[k] : G.vertices[(k + 1) % n];
            cplx B = dir == 0 ? G.vertices[(k + 1) % n] : G.vertices[k];
            for (int d = 0; d < depth; ++d) {
                double xb = Wi.apply(B).real(), xa = Wi.apply(A).real();
                double best = 1e300;
                cplx bestC = 0;
                Tile bestTile = tile;
                for (const Tile& t : star_of(G, tile, B, vtol)) {
                    for (int i = 0; i < n; ++i) {
                        cplx p = t.v[i], q = t.v[(i + 1) % n];
                        cplx C;
                        if (std::abs(p - B) < vtol) C = q;
                        else if (std::abs(q - B) < vtol) C = p;
                        else continue;
                        double xc = Wi.apply(C).real();
                        if ((xc - xb) * (xb - xa) <= 0) continue;   // not beyond B
                        double m = dist_to_line(Wi, C);
                        if (m < best) { best = m; bestC = C; bestTile = t; }
                    }
                }
                rep.worst_per_side[k] = std::max(rep.worst_per_side[k], best);
                if (best > tol) break;
                A = B;
                B = bestC;
                tile = bestTile;
            }
        }
        rep.worst = std::max(rep.worst, rep.worst_per_side[k]);
    }
    rep.ok = rep.worst <= tol;
    return rep;
}

} // namespace bsl
