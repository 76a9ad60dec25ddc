#include "bsl/boundary_dynamics.hpp"
#include "bsl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace bsl {

double circular_distance(double a, double b) {
    double d = wrap_angle(a - b);
    return std::min(d, kTau - d);
}

bool Arc::contains(double theta, double tol) const {
    if (closure == Side::Left) {
        double u = wrap_angle(theta - start);
        if (u > kTau - tol) return true;           // at the closed start
        return u < length - tol || u <= tol;
    }
    double v = wrap_angle(start + length - theta);
    if (v > kTau - tol) return true;               // at the closed end
    return v < length - tol || v <= tol;
}

bool Arc::overlaps(double a, double len, double tol) const {
    return wrap_angle(start - a) < len - tol || wrap_angle(a - start) < length - tol;
}

Arc Partition::arc(int i) const {
    int q = size();
    Arc a;
    a.start = cuts[i];
    a.length = wrap_angle(cuts[(i + 1) % q] - cuts[i]);
    if (a.length == 0) a.length = kTau;
    a.closure = side;
    return a;
}

namespace {

int arc_index(const std::vector<double>& cuts, double theta, Side side, double tol) {
    int q = static_cast<int>(cuts.size());
    theta = wrap_angle(theta);
    int i = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), theta) - cuts.begin()) - 1;
    if (i < 0) i = q - 1;
    int next = (i + 1) % q;
    if (side == Side::Left) return wrap_angle(cuts[next] - theta) <= tol ? next : i;
    double dc = wrap_angle(theta - cuts[i]);
    return dc <= tol ? (i - 1 + q) % q : i;
}

} // namespace

int Partition::arc_of(double theta, double tol) const { return arc_index(cuts, theta, side, tol); }

double Partition::midpoint(int i) const {
    Arc a = arc(i);
    return wrap_angle(a.start + a.length / 2);
}

std::vector<int> Partition::overlapping(double a, double len) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (arc(i).overlaps(a, len)) out.push_back(i);
    return out;
}

Partition build_coarse_partition(const FuchsianGroup& g, Side side) {
    int n = g.sides();
    std::vector<std::pair<double, int>> pts;
    for (int j = 0; j < n; ++j)
        pts.push_back({side == Side::Left ? g.side_left_endpoint(j) : g.side_right_endpoint(j), j});
    std::sort(pts.begin(), pts.end());
    Partition p;
    p.side = side;
    for (int i = 0; i < n; ++i) {
        if (circular_distance(pts[i].first, pts[(i + 1) % n].first) < 1e-12)
            throw DegeneratePartition("coincident side endpoints");
        p.cuts.push_back(pts[i].first);
    }
    // left arcs start at their own endpoint, right arcs end at it
    for (int i = 0; i < n; ++i) p.gen.push_back(side == Side::Left ? pts[i].second : pts[(i + 1) % n].second);

    for (int i = 0; i < n; ++i) {
        Arc a = p.arc(i);
        const Mobius& m = g.gens[p.gen[i]];
        for (int s = 0; s <= 64; ++s) {
            double th = a.start + a.length * s / 64.0;
            if (m.boundary_derivative_angle(th) < 1.0 - 1e-10)
                throw DegeneratePartition("assigned generator contracts on its coarse arc");
        }
    }
    return p;
}

Partition refine_to_markov(const Partition& coarse, const FuchsianGroup& g, int max_iter, int* iterations) {
    const double match = 1e-9;
    const size_t cap = 4096;
    std::vector<double> C = coarse.cuts;
    auto known = [&](const std::vector<double>& pts, double y) {
        for (double x : pts)
            if (circular_distance(x, y) <= match) return true;
        return false;
    };
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> fresh;
        for (double c : C) {
            // both one-sided limits of T at c
            int g1 = coarse.gen[arc_index(coarse.cuts, c, Side::Left, 1e-12)];
            int g2 = coarse.gen[arc_index(coarse.cuts, c, Side::Right, 1e-12)];
            for (int gi : {g1, g2}) {
                double y = g.gens[gi].apply_angle(c);
                if (!known(C, y) && !known(fresh, y)) fresh.push_back(y);
            }
        }
        if (fresh.empty()) {
            if (iterations) *iterations = it;
            std::sort(C.begin(), C.end());
            Partition p;
            p.side = coarse.side;
            p.cuts = C;
            for (int i = 0; i < p.size(); ++i) p.gen.push_back(coarse.gen[coarse.arc_of(p.midpoint(i))]);
            return p;
        }
        C.insert(C.end(), fresh.begin(), fresh.end());
        if (C.size() > cap) break;
    }
    throw NoFiniteMarkovOrbit("cut-point orbit did not close; the even-corner property is likely violated");
}

std::pair<int, int> BowenSeriesMap::image_range(int i) const {
    const Mobius& g = group_.gens[part_.gen[i]];
    const auto& C = part_.cuts;
    int q = part_.size();
    auto nearest = [&](double y) {
        int best = 0;
        for (int j = 1; j < q; ++j)
            if (circular_distance(C[j], y) < circular_distance(C[best], y)) best = j;
        return best;
    };
    int a = nearest(g.apply_angle(C[i]));
    int b = nearest(g.apply_angle(C[(i + 1) % q]));
    int cnt = ((b - a) % q + q) % q;
    if (cnt == 0) cnt = q;
    return {a, cnt};
}

std::string MarkovReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "markov endpoint_err=" << endpoint_error << " length_sum_err=" << length_sum_error
       << " min|T'|=" << min_unstable << (ok ? " ok" : " FAIL");
    return os.str();
}

MarkovReport BowenSeriesMap::verify(int samples) const {
    MarkovReport rep;
    int q = part_.size();
    const auto& C = part_.cuts;
    double total = 0;
    rep.min_unstable = 1e300;
    for (int i = 0; i < q; ++i) {
        const Mobius& g = group_.gens[part_.gen[i]];
        for (double e : {C[i], C[(i + 1) % q]}) {
            double y = g.apply_angle(e), best = 1e300;
            for (double c : C) best = std::min(best, circular_distance(c, y));
            rep.endpoint_error = std::max(rep.endpoint_error, best);
        }
        Arc a = part_.arc(i);
        total += a.length;
        int per = std::max(2, samples / q);
        for (int s = 0; s < per; ++s) {
            double th = a.start + a.length * (s + 0.5) / per;
            rep.min_unstable = std::min(rep.min_unstable, g.boundary_derivative_angle(th));
        }
    }
    rep.length_sum_error = std::abs(total - kTau);
    rep.ok = rep.endpoint_error < 1e-10 && rep.length_sum_error < 1e-10 && rep.min_unstable >= 1.0 - 1e-10;
    return rep;
}

Arc BakerSystem::q_right(int k) const {
    const Partition& P = right.partition();
    Arc a;
    a.start = P.cuts[QR[k].first];
    a.length = 0;
    for (int c = 0; c < QR[k].second; ++c) a.length += P.arc((QR[k].first + c) % P.size()).length;
    a.closure = Side::Right;
    return a;
}

Arc BakerSystem::q_left(int l) const {
    const Partition& P = left.partition();
    Arc a;
    a.start = P.cuts[QL[l].first];
    a.length = 0;
    for (int c = 0; c < QL[l].second; ++c) a.length += P.arc((QL[l].first + c) % P.size()).length;
    a.closure = Side::Left;
    return a;
}

std::pair<double, double> BakerSystem::apply(double xi, double eta) const {
    if (!in_sigma(xi, eta)) throw DomainError("point outside the baker domain");
    const Mobius& g = gamma_L(xi);
    return {g.apply_angle(xi), g.apply_angle(eta)};
}

std::pair<double, double> BakerSystem::inverse(double xi, double eta) const {
    if (!in_sigma(xi, eta)) throw DomainError("point outside the baker domain");
    const Mobius& g = gamma_R(eta);
    return {g.apply_angle(xi), g.apply_angle(eta)};
}

Incidence initial_incidence(int q) {
    Incidence J(q, std::vector<std::uint8_t>(q, 0));
    for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l)
            J[k][l] = (k != l && (k + 1) % q != l && (l + 1) % q != k) ? 1 : 0;
    return J;
}

int count_ones(const Incidence& J) {
    int c = 0;
    for (auto& row : J)
        for (auto v : row) c += v;
    return c;
}

namespace {

struct ImageArc {
    double start, length;
};

ImageArc image_of(const Mobius& g, const Partition& P, int i) {
    Arc a = P.arc(i);
    double s = g.apply_angle(a.start);
    return {s, wrap_angle(g.apply_angle(a.end()) - s)};
}

} // namespace

Incidence prune_incidence(const BowenSeriesMap& L, const BowenSeriesMap& R, Incidence J) {
    const Partition& PL = L.partition();
    const Partition& PR = R.partition();
    const FuchsianGroup& G = L.group();
    int q = PL.size();
    auto all_set = [&](const std::vector<int>& ks, const std::vector<int>& ls) {
        for (int a : ks)
            for (int b : ls)
                if (!J[a][b]) return false;
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < q; ++k)
            for (int l = 0; l < q; ++l) {
                if (!J[k][l]) continue;
                bool ok = true;
                int g = PL.gen[k];
                const Mobius& m = G.gens[g];
                auto iL = image_of(m, PL, k), iR = image_of(m, PR, l);
                auto Ls = PL.overlapping(iL.start, iL.length);
                auto Rs = PR.overlapping(iR.start, iR.length);
                for (int r : Rs)
                    if (PR.gen[r] != G.pair(g)) ok = false;
                if (ok) ok = all_set(Ls, Rs);
                if (ok) {
                    int h = PR.gen[l];
                    const Mobius& mh = G.gens[h];
                    auto bL = image_of(mh, PL, k), bR = image_of(mh, PR, l);
                    auto Ls2 = PL.overlapping(bL.start, bL.length);
                    auto Rs2 = PR.overlapping(bR.start, bR.length);
                    for (int a : Ls2)
                        if (PL.gen[a] != G.pair(h)) ok = false;
                    if (ok) ok = all_set(Ls2, Rs2);
                }
                if (!ok) {
                    J[k][l] = 0;
                    changed = true;
                }
            }
    }
    return J;
}

namespace {

// the set {j : row[j]} as one cyclic run; false if empty or split
bool single_run(const std::vector<std::uint8_t>& row, int& first, int& count) {
    int q = static_cast<int>(row.size());
    count = 0;
    for (auto v : row) count += v;
    if (count == 0) return false;
    if (count == q) {
        first = 0;
        return true;
    }
    int starts = 0;
    for (int j = 0; j < q; ++j)
        if (row[j] && !row[(j - 1 + q) % q]) {
            ++starts;
            first = j;
        }
    return starts == 1;
}

} // namespace

BakerSystem assemble_baker(const BowenSeriesMap& L, const BowenSeriesMap& R, const Incidence& J) {
    BakerSystem B;
    B.left = L;
    B.right = R;
    B.J = J;
    int q = L.arcs();
    auto touches = [q](int a, int first, int count) {
        // closure of arc a meets closure of the run [first, first+count)
        for (int c = 0; c < count; ++c) {
            int b = (first + c) % q;
            if (b == a || (b + 1) % q == a || (a + 1) % q == b) return true;
        }
        return false;
    };
    B.QR.resize(q);
    B.QL.resize(q);
    for (int k = 0; k < q; ++k) {
        int f, c;
        if (!single_run(J[k], f, c)) throw BakerConstruction("Q^R row is not a single arc");
        if (touches(k, f, c)) throw BakerConstruction("closure of Q^R meets closure of I^L");
        B.QR[k] = {f, c};
    }
    for (int l = 0; l < q; ++l) {
        std::vector<std::uint8_t> col(q);
        for (int k = 0; k < q; ++k) col[k] = J[k][l];
        int f, c;
        if (!single_run(col, f, c)) throw BakerConstruction("Q^L column is not a single arc");
        if (touches(l, f, c)) throw BakerConstruction("closure of Q^L meets closure of I^R");
        B.QL[l] = {f, c};
    }
    // bijectivity on a fixed sample of the domain
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int s = 0; s < 2000; ++s) {
        int k = static_cast<int>(U(rng) * q) % q;
        Arc a = L.partition().arc(k), qr = B.q_right(k);
        double xi = wrap_angle(a.start + a.length * U(rng));
        double eta = wrap_angle(qr.start + qr.length * U(rng));
        if (!B.in_sigma(xi, eta)) continue;
        auto f = B.apply(xi, eta);
        if (!B.in_sigma(f.first, f.second)) throw BakerConstruction("image leaves the domain");
        auto b = B.inverse(f.first, f.second);
        if (circular_distance(b.first, xi) > 1e-10 || circular_distance(b.second, eta) > 1e-10)
            throw BakerConstruction("extension map is not invertible on samples");
    }
    return B;
}

BakerSystem build_baker_pruned(const BowenSeriesMap& L, const BowenSeriesMap& R) {
    return assemble_baker(L, R, prune_incidence(L, R, initial_incidence(L.arcs())));
}

PreimageReport verify_preimage_bijection(const BakerSystem& B, double xi_p, double eta) {
    PreimageReport rep;
    const Partition& PL = B.left.partition();
    const Partition& PR = B.right.partition();
    const FuchsianGroup& G = B.left.group();
    int q = B.arcs();
    std::vector<double> xs, ys;
    int rEta = PR.arc_of(eta);
    for (int k = 0; k < q; ++k) {
        double xi = G.gens[PL.gen[k]].inverse().apply_angle(xi_p);
        if (PL.arc_of(xi) == k && B.J[k][rEta]) xs.push_back(xi);
    }
    int lXi = PL.arc_of(xi_p);
    for (int l = 0; l < q; ++l) {
        double ep = G.gens[PR.gen[l]].inverse().apply_angle(eta);
        if (PR.arc_of(ep) == l && B.J[lXi][l]) ys.push_back(ep);
    }
    rep.checked = 1;
    rep.max_cardinality = static_cast<int>(std::max(xs.size(), ys.size()));
    if (xs.size() != ys.size()) rep.mismatches = 1;
    for (double xi : xs) {
        double ep = B.gamma_L(xi).apply_angle(eta), best = 1e300;
        for (double y : ys) best = std::min(best, circular_distance(y, ep));
        rep.pairing_error = std::max(rep.pairing_error, best);
    }
    if (rep.pairing_error > 1e-10) rep.mismatches = 1;
    rep.ok = rep.mismatches == 0;
    return rep;
}

std::vector<double> forward_preimages(const BowenSeriesMap& T, int n, double xi_p) {
    std::vector<double> cur{xi_p};
    const Partition& P = T.partition();
    for (int step = 0; step < n; ++step) {
        std::vector<double> next;
        for (double y : cur)
            for (int k = 0; k < P.size(); ++k) {
                double x = T.group().gens[P.gen[k]].inverse().apply_angle(y);
                if (P.arc_of(x) == k) next.push_back(x);
            }
        cur = std::move(next);
    }
    return cur;
}

Cylinder cylinder(const BakerSystem& B, int n, double xi) {
    const BowenSeriesMap& T = B.left;
    const Partition& P = T.partition();
    std::vector<int> arcs;
    std::vector<double> orbit{xi};
    for (int m = 0; m < n; ++m) orbit.push_back(T.apply(orbit.back()));
    Mobius word;
    for (int m = 0; m < n; ++m) word = compose(T.generator(orbit[m]), word);
    Arc E = P.arc(P.arc_of(orbit[n]));
    for (int m = n - 1; m >= 0; --m) {
        Mobius gi = T.generator(orbit[m]).inverse();
        double s = gi.apply_angle(E.start);
        E.length = wrap_angle(gi.apply_angle(E.end()) - s);
        E.start = s;
    }
    Cylinder c;
    c.left = E;
    c.word = word;
    Arc Q = B.q_right(P.arc_of(xi));
    c.q_start = word.apply_angle(Q.start);
    c.q_length = wrap_angle(word.apply_angle(Q.end()) - c.q_start);
    return c;
}

BoundarySystem build_boundary_system(const FuchsianGroup& g, int max_iter) {
    check_pairing(g);
    BoundarySystem S;
    S.group = g;
    Partition L = refine_to_markov(build_coarse_partition(g, Side::Left), g, max_iter, &S.refine_iterations_left);
    Partition R = refine_to_markov(build_coarse_partition(g, Side::Right), g, max_iter, &S.refine_iterations_right);
    S.left = BowenSeriesMap(g, L);
    S.right = BowenSeriesMap(g, R);
    for (auto* T : {&S.left, &S.right}) {
        auto rep = T->verify();
        if (!rep.ok) throw InvariantViolation("Markov property failed", rep.text());
    }
    S.baker = build_baker_pruned(S.left, S.right);
    return S;
}

} // namespace bsl
