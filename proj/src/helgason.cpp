#include "bsl/helgason.hpp"
#include "bsl/errors.hpp"
#include "bsl/quadrature.hpp"
#include "bsl/simd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bsl {

namespace {
double key_angle(double eta) { return eta <= 0.0 ? kTau : eta; }
} // namespace

void BoundaryDistribution::index() {
    order_.resize(eta.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](size_t a, size_t b) { return key_angle(eta[a]) < key_angle(eta[b]); });
    partial_.assign(eta.size() + 1, 0.0);
    for (size_t i = 0; i < order_.size(); ++i) partial_[i + 1] = partial_[i] + nu[order_[i]];
}

BoundaryDistribution BoundaryDistribution::from_nodes(const Collocation& C, const CVector& nu, cplx s) {
    BoundaryDistribution d;
    d.s = s;
    for (int l = 0; l < C.op().arcs(); ++l)
        for (int i = 0; i < C.N(); ++i) {
            d.eta.push_back(C.node(l, i));
            d.nu.push_back(nu[l * C.N() + i]);
            d.arc.push_back(l);
        }
    d.index();
    return d;
}

BoundaryDistribution BoundaryDistribution::single(double eta, cplx s, cplx mass) {
    BoundaryDistribution d;
    d.s = s;
    d.eta = {wrap_angle(eta)};
    d.nu = {mass};
    d.arc = {-1};
    d.index();
    return d;
}

BoundaryDistribution BoundaryDistribution::from_masses(const std::vector<double>& eta, const std::vector<cplx>& nu,
                                                       cplx s) {
    if (eta.size() != nu.size() || eta.empty()) throw DomainError("distribution needs one mass per angle");
    BoundaryDistribution d;
    d.s = s;
    for (double e : eta) d.eta.push_back(wrap_angle(e));
    d.nu = nu;
    d.arc.assign(eta.size(), -1);
    d.index();
    return d;
}

cplx BoundaryDistribution::total() const { return partial_.back(); }

cplx BoundaryDistribution::cumulative(double theta) const {
    double turns = std::floor(theta / kTau);
    double base = theta - turns * kTau;
    auto it = std::upper_bound(order_.begin(), order_.end(), base,
                               [&](double v, size_t j) { return v < key_angle(eta[j]); });
    return partial_[it - order_.begin()] + turns * total();
}

cplx BoundaryDistribution::stieltjes(const std::function<cplx(double)>& psi, double alpha, double beta) const {
    // psi(b) D(b) - psi(a) D(a) - int psi' D, the last term exact on each flat piece of D
    std::vector<double> jumps;
    for (double e : eta) {
        double t = alpha + wrap_angle(e - alpha);
        if (t <= alpha) t += kTau;
        if (t < beta) jumps.push_back(t);
    }
    std::sort(jumps.begin(), jumps.end());
    cplx integral = 0;
    double a = alpha;
    for (double t : jumps) {
        if (t > a) integral += cumulative(a) * (psi(t) - psi(a));
        a = t;
    }
    integral += cumulative(a) * (psi(beta) - psi(a));
    return psi(beta) * cumulative(beta) - psi(alpha) * cumulative(alpha) - integral;
}

cplx BoundaryDistribution::pair_arcs(const std::function<cplx(double)>& psi, const std::vector<int>& arcs) const {
    cplx sum = 0;
    for (size_t j = 0; j < eta.size(); ++j)
        if (std::find(arcs.begin(), arcs.end(), arc[j]) != arcs.end()) sum += psi(eta[j]) * nu[j];
    return sum;
}

EigenfunctionField::EigenfunctionField(const BoundaryDistribution& d) : d_(d) {
    for (cplx v : d_.nu) {
        nre_.push_back(v.real());
        nim_.push_back(v.imag());
    }
    for (double e : d_.eta) {
        sh_.push_back(std::sin(0.5 * e));
        ch_.push_back(std::cos(0.5 * e));
    }
}

void EigenfunctionField::polar(double r, double theta, cplx& f, cplx& df) const {
    auto ps = simd::poisson_sums(nre_.size(), sh_.data(), ch_.data(), nre_.data(), nim_.data(), r, theta, d_.s);
    f = ps.s0;
    df = d_.s * ps.s1;
}

cplx EigenfunctionField::f(cplx z) const {
    cplx v, dv;
    polar(2.0 * std::atanh(std::abs(z)), std::arg(z), v, dv);
    return v;
}

cplx EigenfunctionField::df_dr(cplx z) const {
    cplx v, dv;
    polar(2.0 * std::atanh(std::abs(z)), std::arg(z), v, dv);
    return dv;
}

std::string LaplaceReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "laplace h=" << h << " max=" << max_residual << (ok ? " ok" : " FAIL");
    return os.str();
}

LaplaceReport verify_laplace_eigen(const EigenfunctionField& ef, const std::vector<cplx>& zs, double h, double tol) {
    cplx s = ef.distribution().s;
    LaplaceReport rep;
    rep.h = h;
    for (cplx z : zs) {
        double hz = std::min(h, (1.0 - std::abs(z)) / 10.0);
        cplx f0 = ef.f(z);
        cplx lap = (ef.f(z + hz) + ef.f(z - hz) + ef.f(z + cplx(0, hz)) + ef.f(z - cplx(0, hz)) - 4.0 * f0) / (hz * hz);
        double w = 1.0 - std::norm(z);
        double res = std::abs(0.25 * w * w * lap + s * (1.0 - s) * f0) / std::abs(f0);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    rep.ok = rep.max_residual < tol;
    return rep;
}

double automorphy_metric(const EigenfunctionField& ef, const std::vector<Mobius>& gens, const std::vector<cplx>& zs,
                         double max_radius) {
    double scale = 0, worst = 0;
    for (cplx z : zs) {
        cplx f0 = ef.f(z);
        scale = std::max(scale, std::abs(f0));
        for (auto& g : gens) {
            cplx gz = g.apply(z);
            if (hyperbolic_distance(0.0, gz) > max_radius) continue;
            worst = std::max(worst, std::abs(ef.f(gz) - f0));
        }
    }
    return worst / scale;
}

cplx otal_increment(const EigenfunctionField& ef, double r, double a, double b, double rel_tol) {
    if (b <= a) return 0.0;
    cplx s = ef.distribution().s;
    // e^{-sr} sinh r, the e^{-r/2}-type growth handled in closed form
    cplx factor = std::exp(cplx(0, -s.imag() * r)) *
                  0.5 * (std::exp((1.0 - s.real()) * r) - std::exp(-(1.0 + s.real()) * r));
    std::vector<double> breaks;
    for (double e : ef.distribution().eta) {
        double t = a + wrap_angle(e - a);
        for (; t < b; t += kTau)
            if (t > a) breaks.push_back(t);
    }
    double mass = 0;
    for (cplx v : ef.distribution().nu) mass += std::abs(v);
    auto integrand = [&](double th) {
        cplx f, df;
        ef.polar(r, th, f, df);
        return df + s * f;
    };
    QuadResult q = integrate_gk(integrand, a, b, rel_tol, rel_tol * 1e-3 * mass, breaks, 200000);
    return factor * q.value;
}

cplx otal_transform(const EigenfunctionField& ef, double r, double alpha, double rel_tol) {
    return otal_increment(ef, r, 0.0, alpha, rel_tol);
}

EquivariancePair equivariance(const BoundaryDistribution& d, const BowenSeriesMap& T, const Mobius& g, int arc,
                              const std::function<cplx(double)>& psi) {
    std::vector<int> image;
    if (matrix_distance(g, Mobius::identity()) < 1e-14) {
        cplx v = d.pair_arcs(psi, {arc});
        return {v, v};
    }
    if (matrix_distance(g, T.group().gens[T.partition().gen[arc]]) < 1e-12) {
        auto [first, count] = T.image_range(arc);
        for (int c = 0; c < count; ++c) image.push_back((first + c) % T.arcs());
    } else {
        throw DomainError("equivariance check needs the identity or the arc's generator");
    }
    Mobius gi = g.inverse();
    cplx s = d.s;
    auto pushed = [&](double th) {
        double d1 = gi.boundary_derivative_angle(th);
        return psi(gi.apply_angle(th)) * std::exp(s * std::log(d1));
    };
    return {d.pair_arcs(pushed, image), d.pair_arcs(psi, {arc})};
}

std::string RoundTripReport::text() const {
    std::ostringstream os;
    os.precision(4);
    for (size_t i = 0; i < radii.size(); ++i)
        os << "roundtrip r=" << radii[i] << " c=" << c[i].real() << (c[i].imag() < 0 ? "" : "+") << c[i].imag()
           << "i shape_error=" << shape_error[i] << "\n";
    return os.str();
}

RoundTripReport round_trip(const EigenfunctionField& ef, const std::vector<double>& boundaries,
                           const std::vector<double>& radii, double rel_tol) {
    const auto& d = ef.distribution();
    size_t m = boundaries.size();
    RoundTripReport rep;
    rep.radii = radii;
    std::vector<cplx> mass(m);
    double mnorm = 0;
    for (size_t i = 0; i < m; ++i) {
        double a = boundaries[i], b = boundaries[(i + 1) % m];
        if (b <= a) b += kTau;
        mass[i] = d.cumulative(b) - d.cumulative(a);
        mnorm += std::norm(mass[i]);
    }
    if (mnorm < 1e-300) throw DegenerateTransfer("round trip: every arc carries zero mass");
    for (double r : radii) {
        std::vector<RoundTripRow> rows;
        cplx num = 0;
        double inorm = 0;
        for (size_t i = 0; i < m; ++i) {
            double a = boundaries[i], b = boundaries[(i + 1) % m];
            if (b <= a) b += kTau;
            cplx inc = otal_increment(ef, r, a, b, rel_tol);
            rows.push_back({a, b, inc, mass[i]});
            num += std::conj(mass[i]) * inc;
            inorm += std::norm(inc);
        }
        if (inorm < 1e-300) throw DegenerateTransfer("round trip: every Otal increment vanishes");
        cplx c = num / mnorm;
        double err = 0;
        for (auto& row : rows) err += std::norm(row.otal - c * row.mass);
        rep.c.push_back(c);
        rep.shape_error.push_back(std::sqrt(err / (std::norm(c) * mnorm)));
        rep.rows.push_back(std::move(rows));
    }
    return rep;
}

std::vector<double> roundtrip_boundaries(const Partition& P, int arcs) {
    if (arcs <= 0 || P.size() % arcs) throw ConfigError("round-trip arc count must divide the Markov arc count");
    int step = P.size() / arcs;
    std::vector<double> b;
    for (int i = 0; i < P.size(); i += step) b.push_back(P.midpoint(i));
    std::sort(b.begin(), b.end());
    return b;
}

double holder_half_constant(const BoundaryDistribution& d, double min_scale) {
    double worst = 0;
    for (int j = 1;; ++j) {
        double h = kTau / std::ldexp(1.0, j);
        if (h < min_scale) break;
        int n = 1 << j;
        for (int i = 0; i < n; ++i) {
            double t = i * h;
            worst = std::max(worst, std::abs(d.cumulative(t + h) - d.cumulative(t)) / std::sqrt(h));
        }
    }
    return worst;
}

} // namespace bsl
