#include "bsl/involution.hpp"
#include "bsl/errors.hpp"
#include "bsl/simd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bsl {

namespace {

// smallest chord between two closed arcs
double arc_chord_gap(const Arc& a, const Arc& b) {
    auto inside = [](const Arc& x, double t) { return wrap_angle(t - x.start) <= x.length; };
    double ends_a[2] = {a.start, a.end()}, ends_b[2] = {b.start, b.end()};
    for (double t : ends_a)
        if (inside(b, t)) return 0.0;
    for (double t : ends_b)
        if (inside(a, t)) return 0.0;
    double best = 1e300;
    for (double x : ends_a)
        for (double y : ends_b) best = std::min(best, std::abs(unit(x) - unit(y)));
    return best;
}

} // namespace

InvolutionKernel::InvolutionKernel(const BakerSystem& B, double scale) : B_(B), scale_(scale), gap_(1e300) {
    for (int k = 0; k < B.arcs(); ++k) {
        Arc I = B.left.partition().arc(k);
        Arc Q = B.q_right(k);
        gap_ = std::min(gap_, arc_chord_gap(I, Q));
    }
}

double InvolutionKernel::kernel_arcs(int kl, double xi, int kr, double eta) const {
    if (!B_.J[kl][kr]) return 0.0;
    return scale_ * 4.0 / std::norm(unit(xi) - unit(eta));
}

cplx InvolutionKernel::kernel_pow_arcs(int kl, double xi, int kr, double eta, cplx s) const {
    if (!B_.J[kl][kr]) return 0.0;
    return std::exp(s * std::log(scale_ * 4.0 / std::norm(unit(xi) - unit(eta))));
}

double InvolutionKernel::kernel(double xi, double eta) const {
    return kernel_arcs(B_.left.partition().arc_of(xi), xi, B_.right.partition().arc_of(eta), eta);
}

cplx InvolutionKernel::kernel_pow(double xi, double eta, cplx s) const {
    return kernel_pow_arcs(B_.left.partition().arc_of(xi), xi, B_.right.partition().arc_of(eta), eta, s);
}

double InvolutionKernel::W(double xi, double eta) const {
    cplx z = chord_point_nearest_origin({eta, xi});
    return busemann(unit(xi), 0.0, z) + busemann(unit(eta), 0.0, z);
}

std::string IdentityReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "involution identity samples=" << samples << " max=" << max_residual << " thr=" << threshold
       << (ok ? " ok" : " FAIL");
    return os.str();
}

IdentityReport verify_involution_identity(const InvolutionKernel& K, int samples, std::uint64_t seed,
                                          const LogKernelFn& log_k) {
    const BakerSystem& B = K.baker();
    LogKernelFn lk = log_k ? log_k : [&K](double x, double y) { return K.log_kernel(x, y); };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, kTau);
    IdentityReport rep;
    while (rep.samples < samples) {
        double xi = U(rng), eta = U(rng);
        if (!B.in_sigma(xi, eta)) continue;
        auto [xp, ep] = B.apply(xi, eta);
        double AL = -std::log(B.left.derivative(xi));
        double AR = -std::log(B.right.derivative(ep));
        rep.max_residual = std::max(rep.max_residual, std::abs(AL - AR - lk(xp, ep) + lk(xi, eta)));
        ++rep.samples;
    }
    rep.ok = rep.max_residual < rep.threshold;
    return rep;
}

std::string DualityReport::text() const {
    std::ostringstream os;
    os.precision(3);
    os << "duality s=" << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i pairs=" << pairs
       << " max=" << max_residual << " thr=" << threshold << (ok ? " ok" : " FAIL");
    return os.str();
}

DualityReport verify_duality(const InvolutionKernel& K, cplx s, int pairs, std::uint64_t seed,
                             const Incidence* J_override) {
    const BakerSystem& B = K.baker();
    const Incidence& J = J_override ? *J_override : B.J;
    TransferOperator TL(B.left), TR(B.right);
    auto kpow = [&](int kl, double x, int kr, double y) -> cplx {
        if (!J[kl][kr]) return 0.0;
        return std::exp(s * std::log(4.0 / std::norm(unit(x) - unit(y))));
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, kTau);
    DualityReport rep;
    rep.s = s;
    for (int p = 0; p < pairs; ++p) {
        double xp = U(rng), eta = U(rng);
        int kl = B.left.partition().arc_of(xp), kr = B.right.partition().arc_of(eta);
        cplx lhs = TR.apply([&](int k, double y) { return kpow(kl, xp, k, y); }, eta, s);
        cplx rhs = TL.apply([&](int k, double x) { return kpow(k, x, kr, eta); }, xp, s);
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        ++rep.pairs;
    }
    rep.ok = rep.max_residual < rep.threshold;
    return rep;
}

DualTransfer::DualTransfer(const InvolutionKernel& K, const Collocation& C, const CVector& nu, cplx s)
    : K_(K), C_(C), s_(s), L_(K.baker().left) {
    int q = C.op().arcs(), N = C.N();
    eta_.resize(q * N);
    nre_.resize(q * N);
    nim_.resize(q * N);
    for (int l = 0; l < q; ++l)
        for (int i = 0; i < N; ++i) {
            eta_[l * N + i] = C.node(l, i);
            nre_[l * N + i] = nu[l * N + i].real();
            nim_[l * N + i] = nu[l * N + i].imag();
        }
}

cplx DualTransfer::psi_on_arc(int k, double xi) const {
    const auto& J = K_.baker().J;
    int N = C_.N();
    cplx z = unit(xi);
    thread_local std::vector<double> x, wr, wi;
    x.clear();
    wr.clear();
    wi.clear();
    for (int l = 0; l < C_.op().arcs(); ++l) {
        if (!J[k][l]) continue;
        for (int i = 0; i < N; ++i) {
            int j = l * N + i;
            x.push_back(std::log(4.0 / std::norm(z - unit(eta_[j]))));
            wr.push_back(nre_[j]);
            wi.push_back(nim_[j]);
        }
    }
    return simd::power_sums(x.size(), x.data(), nullptr, wr.data(), wi.data(), s_).s0;
}

cplx DualTransfer::psi(double xi) const { return psi_on_arc(K_.baker().left.partition().arc_of(xi), xi); }

KernelTransfer DualTransfer::evaluate(const std::vector<double>& grid) const {
    KernelTransfer out;
    out.xi = grid;
    double num = 0;
    for (double xi : grid) {
        cplx p = psi(xi);
        cplx lp = L_.apply([this](int k, double y) { return psi_on_arc(k, y); }, xi, s_);
        out.psi.push_back(p);
        out.Lpsi.push_back(lp);
        out.psi_sup = std::max(out.psi_sup, std::abs(p));
        num = std::max(num, std::abs(lp - p));
    }
    out.residual = out.psi_sup > 0 ? num / out.psi_sup : INFINITY;
    return out;
}

KernelTransfer transfer_dual_to_eigenfunction(const InvolutionKernel& K, const Collocation& C, const CVector& nu,
                                              cplx s, const std::vector<double>& grid) {
    DualTransfer D(K, C, nu, s);
    KernelTransfer r = D.evaluate(grid);
    double nn = nu.cwiseAbs().maxCoeff();
    if (!(r.psi_sup > 1e-10 * nn)) {
        std::ostringstream os;
        os << "kernel transfer collapsed: |psi|=" << r.psi_sup << " against |nu|=" << nn;
        throw DegenerateTransfer(os.str());
    }
    return r;
}

std::vector<double> uniform_grid(int n, double offset) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = kTau * (i + offset) / n;
    return g;
}

} // namespace bsl
