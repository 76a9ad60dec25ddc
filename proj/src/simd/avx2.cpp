// Built with -mavx2 -mfma; only reached through the dispatcher after a cpu check.
#include "bsl/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#include <cmath>

namespace bsl::simd::detail {

namespace {

inline __m256d exp_pd(__m256d x) {
    const __m256d hi = _mm256_set1_pd(709.0), lo = _mm256_set1_pd(-708.0);
    __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    x = _mm256_max_pd(_mm256_min_pd(x, hi), lo);
    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);
    // Taylor to r^13 on |r| <= ln2/2
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    const double c[] = {1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0, 1.0 / 40320.0,
                        1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,     1.0 / 6.0,
                        0.5,               1.0,              1.0};
    for (double ci : c) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(ci));
    __m128i ni = _mm256_cvtpd_epi32(n);
    __m256i e = _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(ni), _mm256_set1_epi64x(1023)), 52);
    __m256d y = _mm256_mul_pd(p, _mm256_castsi256_pd(e));
    return _mm256_andnot_pd(under, y);
}

inline void sincos_pd(__m256d x, __m256d& s, __m256d& c) {
    __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.63661977236758134308)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(1.57079632673412561417e+00), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(6.07710050630396597660e-11), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(2.02226624879595063154e-21), r);
    __m256d r2 = _mm256_mul_pd(r, r);

    // sin r = r (1 - r^2/3! + ... ), to r^17
    __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0);
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.0 / 1307674368000.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(1.0 / 6227020800.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.0 / 39916800.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(1.0 / 362880.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.0 / 5040.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(1.0 / 120.0));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.0 / 6.0));
    ps = _mm256_mul_pd(ps, r2);
    ps = _mm256_fmadd_pd(ps, r, r);
    // cos r to r^18
    __m256d pc = _mm256_set1_pd(-1.0 / 6402373705728000.0);
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0 / 20922789888000.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-1.0 / 87178291200.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0 / 479001600.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-1.0 / 3628800.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0 / 40320.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-1.0 / 720.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0 / 24.0));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-0.5));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0));

    __m256i k = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
    const __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2);
    __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, one), one));
    __m256d sneg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, two), two));
    __m256d cneg = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(k, one), two), two));
    const __m256d sign = _mm256_set1_pd(-0.0);
    s = _mm256_blendv_pd(ps, pc, swap);
    c = _mm256_blendv_pd(pc, ps, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(sneg, sign));
    c = _mm256_xor_pd(c, _mm256_and_pd(cneg, sign));
}

// natural log for positive normal inputs: x = 2^e m, m in [sqrt(1/2), sqrt(2))
inline __m256d log_pd(__m256d x) {
    __m256i bits = _mm256_castpd_si256(x);
    __m256i ex = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                                    _mm256_set1_epi64x(0x3FF0000000000000LL)));
    __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    // exponent to double: small integers, go through the 2^52 trick
    __m256i ex1 = _mm256_sub_epi64(ex, _mm256_castpd_si256(_mm256_and_pd(big, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)))));
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);   // 1.5 * 2^52
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(ex1, _mm256_castpd_si256(magic))), magic);
    __m256d f = _mm256_div_pd(_mm256_sub_pd(m, _mm256_set1_pd(1.0)), _mm256_add_pd(m, _mm256_set1_pd(1.0)));
    __m256d f2 = _mm256_mul_pd(f, f);
    // 2 atanh f = 2 (f + f^3/3 + ... + f^23/23)
    __m256d p = _mm256_set1_pd(1.0 / 23.0);
    for (int k = 21; k >= 1; k -= 2) p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / k));
    __m256d lm = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(f, p));
    // e ln2 split in two for accuracy
    __m256d y = _mm256_fmadd_pd(e, _mm256_set1_pd(1.90821492927058770002e-10), lm);
    return _mm256_fmadd_pd(e, _mm256_set1_pd(6.93147180369123816490e-01), y);
}

inline double hsum(__m256d v) {
    __m128d a = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
    return _mm_cvtsd_f64(_mm_add_sd(a, _mm_unpackhi_pd(a, a)));
}

} // namespace

PowerSum power_sums_avx2(std::size_t n, const double* x, const double* c, const double* wre, const double* wim,
                         cplx s) {
    const __m256d sr = _mm256_set1_pd(s.real()), si = _mm256_set1_pd(s.imag());
    __m256d a0r = _mm256_setzero_pd(), a0i = _mm256_setzero_pd();
    __m256d a1r = _mm256_setzero_pd(), a1i = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d xv = _mm256_loadu_pd(x + j);
        __m256d m = exp_pd(_mm256_mul_pd(sr, xv));
        __m256d sn, cs;
        sincos_pd(_mm256_mul_pd(si, xv), sn, cs);
        __m256d er = _mm256_mul_pd(m, cs), ei = _mm256_mul_pd(m, sn);
        __m256d wr = _mm256_loadu_pd(wre + j), wi = _mm256_loadu_pd(wim + j);
        __m256d tr = _mm256_fmsub_pd(wr, er, _mm256_mul_pd(wi, ei));
        __m256d ti = _mm256_fmadd_pd(wr, ei, _mm256_mul_pd(wi, er));
        a0r = _mm256_add_pd(a0r, tr);
        a0i = _mm256_add_pd(a0i, ti);
        if (c) {
            __m256d cv = _mm256_loadu_pd(c + j);
            a1r = _mm256_fmadd_pd(cv, tr, a1r);
            a1i = _mm256_fmadd_pd(cv, ti, a1i);
        }
    }
    PowerSum r;
    r.s0 = cplx(hsum(a0r), hsum(a0i));
    if (c) r.s1 = cplx(hsum(a1r), hsum(a1i));
    if (j < n) {
        PowerSum t = power_sums_scalar(n - j, x + j, c ? c + j : nullptr, wre + j, wim + j, s);
        r.s0 += t.s0;
        r.s1 += t.s1;
    }
    return r;
}

void cexp_avx2(std::size_t n, const double* x, cplx s, double* out_re, double* out_im) {
    const __m256d sr = _mm256_set1_pd(s.real()), si = _mm256_set1_pd(s.imag());
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d xv = _mm256_loadu_pd(x + j);
        __m256d m = exp_pd(_mm256_mul_pd(sr, xv));
        __m256d sn, cs;
        sincos_pd(_mm256_mul_pd(si, xv), sn, cs);
        _mm256_storeu_pd(out_re + j, _mm256_mul_pd(m, cs));
        _mm256_storeu_pd(out_im + j, _mm256_mul_pd(m, sn));
    }
    if (j < n) cexp_scalar(n - j, x + j, s, out_re + j, out_im + j);
}

PowerSum poisson_sums_avx2(std::size_t n, const double* sh, const double* ch, const double* wre, const double* wim,
                           const PolarFrame& fr, cplx s) {
    const __m256d sr = _mm256_set1_pd(s.real()), si = _mm256_set1_pd(s.imag());
    const __m256d st = _mm256_set1_pd(fr.st), ct = _mm256_set1_pd(fr.ct);
    const __m256d om2 = _mm256_set1_pd(fr.om * fr.om), rho4 = _mm256_set1_pd(4.0 * fr.rho);
    const __m256d l1 = _mm256_set1_pd(fr.l1), nrho = _mm256_set1_pd(-fr.rho), omr2 = _mm256_set1_pd(fr.omr2);
    const __m256d om = _mm256_set1_pd(fr.om);
    __m256d a0r = _mm256_setzero_pd(), a0i = _mm256_setzero_pd();
    __m256d a1r = _mm256_setzero_pd(), a1i = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d sd = _mm256_fmsub_pd(st, _mm256_loadu_pd(ch + j), _mm256_mul_pd(ct, _mm256_loadu_pd(sh + j)));
        __m256d s2 = _mm256_mul_pd(sd, sd);
        __m256d d2 = _mm256_fmadd_pd(rho4, s2, om2);
        __m256d x = _mm256_sub_pd(l1, log_pd(d2));
        __m256d num = _mm256_sub_pd(_mm256_add_pd(s2, s2), om);
        __m256d c = _mm256_fnmadd_pd(omr2, _mm256_div_pd(num, d2), nrho);
        __m256d m = exp_pd(_mm256_mul_pd(sr, x));
        __m256d sn, cs;
        sincos_pd(_mm256_mul_pd(si, x), sn, cs);
        __m256d er = _mm256_mul_pd(m, cs), ei = _mm256_mul_pd(m, sn);
        __m256d wr = _mm256_loadu_pd(wre + j), wi = _mm256_loadu_pd(wim + j);
        __m256d tr = _mm256_fmsub_pd(wr, er, _mm256_mul_pd(wi, ei));
        __m256d ti = _mm256_fmadd_pd(wr, ei, _mm256_mul_pd(wi, er));
        a0r = _mm256_add_pd(a0r, tr);
        a0i = _mm256_add_pd(a0i, ti);
        a1r = _mm256_fmadd_pd(c, tr, a1r);
        a1i = _mm256_fmadd_pd(c, ti, a1i);
    }
    PowerSum r{cplx(hsum(a0r), hsum(a0i)), cplx(hsum(a1r), hsum(a1i))};
    if (j < n) {
        PowerSum t = poisson_sums_scalar(n - j, sh + j, ch + j, wre + j, wim + j, fr, s);
        r.s0 += t.s0;
        r.s1 += t.s1;
    }
    return r;
}

} // namespace bsl::simd::detail
#endif
