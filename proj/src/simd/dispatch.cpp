#include "bsl/errors.hpp"
#include "bsl/simd.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace bsl::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa pick() {
    if (const char* e = std::getenv("BSL_SIMD")) {
        if (!std::strcmp(e, "scalar")) return Isa::Scalar;
        if (!std::strcmp(e, "avx2") && cpu_has_avx2()) return Isa::Avx2;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

Isa& current() {
    static Isa isa = pick();
    return isa;
}

} // namespace

bool available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

const char* name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active() { return current(); }

void force(Isa isa) {
    if (!available(isa)) throw ConfigError(std::string("instruction set not available: ") + name(isa));
    current() = isa;
}

PowerSum power_sums(Isa isa, std::size_t n, const double* x, const double* c, const double* wre, const double* wim,
                    cplx s) {
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::Avx2) return detail::power_sums_avx2(n, x, c, wre, wim, s);
#endif
    return detail::power_sums_scalar(n, x, c, wre, wim, s);
}

void cexp(Isa isa, std::size_t n, const double* x, cplx s, double* out_re, double* out_im) {
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::Avx2) return detail::cexp_avx2(n, x, s, out_re, out_im);
#endif
    detail::cexp_scalar(n, x, s, out_re, out_im);
}

PolarFrame::PolarFrame(double r, double theta) {
    rho = std::tanh(0.5 * r);
    om = 2.0 / (std::exp(r) + 1.0);   // 1 - rho without cancellation
    double c = std::cosh(0.5 * r);
    omr2 = 1.0 / (c * c);             // 1 - rho^2
    l1 = std::log(omr2);
    st = std::sin(0.5 * theta);
    ct = std::cos(0.5 * theta);
}

PowerSum poisson_sums(Isa isa, std::size_t n, const double* sh, const double* ch, const double* wre,
                      const double* wim, double r, double theta, cplx s) {
    PolarFrame fr(r, theta);
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::Avx2) return detail::poisson_sums_avx2(n, sh, ch, wre, wim, fr, s);
#endif
    return detail::poisson_sums_scalar(n, sh, ch, wre, wim, fr, s);
}

} // namespace bsl::simd
