#include "bsl/hypgeo.hpp"
#include "bsl/errors.hpp"

#include <cmath>
#include <sstream>

namespace bsl {

double wrap_angle(double a) {
    double r = std::fmod(a, kTau);
    if (r < 0) r += kTau;
    if (r >= kTau) r -= kTau;
    return r;
}

Mobius Mobius::rotation(double theta) {
    Mobius m;
    m.a = std::polar(1.0, theta / 2);
    return m;
}

Mobius Mobius::translation_real(double t) {
    Mobius m;
    m.a = std::cosh(t / 2);
    m.b = std::sinh(t / 2);
    return m;
}

Mobius Mobius::translation_to(cplx z0) {
    double r2 = std::norm(z0);
    if (r2 >= 1.0) throw InvalidMap("translation target outside the disk");
    Mobius m;
    m.a = 1.0 / std::sqrt(1.0 - r2);
    m.b = z0 * m.a;
    return m;
}

void Mobius::validate(double tol) const {
    double d = std::norm(a) - std::norm(b);
    if (!std::isfinite(d) || std::abs(d - 1.0) > tol) {
        std::ostringstream os;
        os << "|a|^2-|b|^2 = " << d << ", expected 1";
        throw InvalidMap(os.str());
    }
}

cplx Mobius::apply(cplx z) const {
    return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

double Mobius::boundary_derivative(cplx xi) const {
    return 1.0 / std::norm(std::conj(b) * xi + std::conj(a));
}

Mobius Mobius::inverse() const {
    Mobius m;
    m.a = std::conj(a);
    m.b = -b;
    m.word.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) m.word.push_back(-*it);
    return m;
}

Mobius compose(const Mobius& m1, const Mobius& m2) {
    Mobius m;
    m.a = m1.a * m2.a + m1.b * std::conj(m2.b);
    m.b = m1.a * m2.b + m1.b * std::conj(m2.a);
    m.word = m1.word;
    m.word.insert(m.word.end(), m2.word.begin(), m2.word.end());
    return m;
}

double matrix_distance(const Mobius& m1, const Mobius& m2) {
    double plus = std::max(std::abs(m1.a - m2.a), std::abs(m1.b - m2.b));
    double minus = std::max(std::abs(m1.a + m2.a), std::abs(m1.b + m2.b));
    return std::min(plus, minus);
}

double hyperbolic_distance(cplx z, cplx w) {
    double q = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
    return 2.0 * std::atanh(std::min(q, 1.0));
}

double poisson_kernel(cplx z, cplx xi) {
    return (1.0 - std::norm(z)) / std::norm(z - xi);
}

double busemann(cplx xi, cplx w, cplx z) {
    return std::log(poisson_kernel(z, xi)) - std::log(poisson_kernel(w, xi));
}

double gromov_sq(cplx xi, cplx eta) { return 0.25 * std::norm(xi - eta); }

cplx chord_point_nearest_origin(const Chord& c) {
    cplx xi = unit(c.forward), eta = unit(c.backward);
    cplx s = xi + eta;
    double m = std::abs(s);
    if (m < 1e-9) return 0.0;
    // orthogonal circle centre lies on the bisector at distance 1/cos(half-angle)
    double r = (2.0 - std::abs(xi - eta)) / m;
    return r * s / m;
}

Mobius chord_frame(const Chord& c) {
    cplx z0 = chord_point_nearest_origin(c);
    Mobius T = Mobius::translation_to(z0);
    cplx e = T.inverse().apply(unit(c.forward));
    return compose(T, Mobius::rotation(std::arg(e)));
}

cplx chord_point_at(const Chord& c, double u) {
    return chord_frame(c).apply(std::tanh(u / 2));
}

bool chord_line_crossing(const Mobius& frame_inv, cplx u, cplx v, double& pos) {
    cplx p = frame_inv.apply(u), q = frame_inv.apply(v);
    double det = 2.0 * (p.real() * q.imag() - p.imag() * q.real());
    double x;
    if (std::abs(det) < 1e-14) {
        // line through the origin
        if (std::abs(p.imag()) < 1e-14 && std::abs(q.imag()) < 1e-14) return false;
        x = 0.0;
    } else {
        double bp = std::norm(p) + 1.0, bq = std::norm(q) + 1.0;
        double cr = (bp * q.imag() - bq * p.imag()) / det;
        double disc = cr * cr - 1.0;
        if (disc < 0) return false;
        x = cr > 0 ? cr - std::sqrt(disc) : cr + std::sqrt(disc);
        // cancellation-free form of the root inside the disk
        if (std::abs(cr) > 1.0) x = 1.0 / (cr > 0 ? cr + std::sqrt(disc) : cr - std::sqrt(disc));
    }
    if (std::abs(x) >= 1.0) return false;
    pos = 2.0 * std::atanh(x);
    return true;
}

} // namespace bsl
