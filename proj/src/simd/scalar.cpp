#include "bsl/simd.hpp"

#include <cmath>

namespace bsl::simd::detail {

PowerSum power_sums_scalar(std::size_t n, const double* x, const double* c, const double* wre, const double* wim,
                           cplx s) {
    PowerSum r;
    for (std::size_t j = 0; j < n; ++j) {
        double m = std::exp(s.real() * x[j]);
        double ph = s.imag() * x[j];
        cplx e(m * std::cos(ph), m * std::sin(ph));
        cplx t = cplx(wre[j], wim[j]) * e;
        r.s0 += t;
        if (c) r.s1 += c[j] * t;
    }
    return r;
}

void cexp_scalar(std::size_t n, const double* x, cplx s, double* out_re, double* out_im) {
    for (std::size_t j = 0; j < n; ++j) {
        double m = std::exp(s.real() * x[j]);
        double ph = s.imag() * x[j];
        out_re[j] = m * std::cos(ph);
        out_im[j] = m * std::sin(ph);
    }
}

PowerSum poisson_sums_scalar(std::size_t n, const double* sh, const double* ch, const double* wre,
                             const double* wim, const PolarFrame& fr, cplx s) {
    PowerSum r;
    for (std::size_t j = 0; j < n; ++j) {
        double sd = fr.st * ch[j] - fr.ct * sh[j];   // sin((theta - eta)/2)
        double s2 = sd * sd;
        double d2 = fr.om * fr.om + 4.0 * fr.rho * s2;
        double x = fr.l1 - std::log(d2);
        double c = -fr.rho - fr.omr2 * (2.0 * s2 - fr.om) / d2;
        double m = std::exp(s.real() * x);
        double ph = s.imag() * x;
        cplx t = cplx(wre[j], wim[j]) * cplx(m * std::cos(ph), m * std::sin(ph));
        r.s0 += t;
        r.s1 += c * t;
    }
    return r;
}

} // namespace bsl::simd::detail
