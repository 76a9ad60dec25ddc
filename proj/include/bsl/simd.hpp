#pragma once
#include "bsl/hypgeo.hpp"

#include <cstddef>

// Complex power sums  S0 = sum_j w_j exp(s x_j),  S1 = sum_j w_j c_j exp(s x_j)
// with x_j real. This is the inner loop of Poisson synthesis, the kernel transfer and
// collocation assembly. Scalar reference plus an AVX2/FMA variant picked at runtime.
namespace bsl::simd {

enum class Isa { Scalar, Avx2 };

struct PowerSum {
    cplx s0{0, 0};
    cplx s1{0, 0};
};

bool available(Isa isa);
const char* name(Isa isa);
// best available, unless BSL_SIMD=scalar|avx2 says otherwise
Isa active();
void force(Isa isa);   // tests only; throws ConfigError when unavailable

// c may be null (s1 is then left zero)
PowerSum power_sums(Isa isa, std::size_t n, const double* x, const double* c, const double* wre,
                    const double* wim, cplx s);
// out_j = exp(s x_j)
void cexp(Isa isa, std::size_t n, const double* x, cplx s, double* out_re, double* out_im);

// Poisson field at z = tanh(r/2) e^{i theta} from masses w_j at eta_j, given sin/cos(eta_j/2):
// s0 = sum w_j P(z,eta_j)^s, s1 = sum w_j P^s d/dr ln P  (so df/dr = s * s1)
PowerSum poisson_sums(Isa isa, std::size_t n, const double* sh, const double* ch, const double* wre,
                      const double* wim, double r, double theta, cplx s);

inline PowerSum power_sums(std::size_t n, const double* x, const double* c, const double* wre, const double* wim,
                           cplx s) {
    return power_sums(active(), n, x, c, wre, wim, s);
}
inline void cexp(std::size_t n, const double* x, cplx s, double* out_re, double* out_im) {
    cexp(active(), n, x, s, out_re, out_im);
}

inline PowerSum poisson_sums(std::size_t n, const double* sh, const double* ch, const double* wre,
                             const double* wim, double r, double theta, cplx s) {
    return poisson_sums(active(), n, sh, ch, wre, wim, r, theta, s);
}

// radius-dependent constants shared by both variants
struct PolarFrame {
    double rho, om, omr2, l1, st, ct;
    PolarFrame(double r, double theta);
};

namespace detail {
PowerSum power_sums_scalar(std::size_t, const double*, const double*, const double*, const double*, cplx);
void cexp_scalar(std::size_t, const double*, cplx, double*, double*);
PowerSum poisson_sums_scalar(std::size_t, const double*, const double*, const double*, const double*,
                             const PolarFrame&, cplx);
PowerSum poisson_sums_avx2(std::size_t, const double*, const double*, const double*, const double*,
                           const PolarFrame&, cplx);
PowerSum power_sums_avx2(std::size_t, const double*, const double*, const double*, const double*, cplx);
void cexp_avx2(std::size_t, const double*, cplx, double*, double*);
} // namespace detail

} // namespace bsl::simd
