#include "phibound/kernels.hpp"

#if !defined(__AVX2__) || !defined(__FMA__)
#error kernels_avx2.cpp must be compiled with -mavx2 -mfma
#endif

#include <immintrin.h>

#include <cstring>

#include "bound_formulas.hpp"

// AVX2 (4 x double) variants of the bound kernels. Each mirrors its scalar
// twin in bound_formulas.hpp operation for operation; the only sources of
// divergence are the in-house vexp/vexpm1 (~1-2 ulp) versus libm. GCC/Clang
// vector operators are used for the plain arithmetic to keep the mirrors
// readable.

namespace phibound::kernels {
namespace {

using vd = __m256d;

inline vd vset(double v) { return _mm256_set1_pd(v); }

inline vd vblend(vd take_if_set, vd otherwise, vd mask) {
    return _mm256_blendv_pd(otherwise, take_if_set, mask);
}

inline vd vabs(vd x) {
    return _mm256_andnot_pd(vset(-0.0), x);
}

// exp(x): Cody-Waite reduction x = n*ln2 + r, then the Cephes rational
//   exp(r) = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)),  |r| <= ln2/2,
// scaled by 2^n through the exponent bits. Arguments below -708.39 flush
// to zero (every use site saturates identically in double), above 709.78
// to +inf. ~1 ulp on finite results.
inline vd vexp(vd x) {
    const vd n = _mm256_round_pd(x * vset(1.4426950408889634),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    vd r = _mm256_fnmadd_pd(n, vset(6.93145751953125e-1), x);
    r = _mm256_fnmadd_pd(n, vset(1.42860682030941723212e-6), r);

    const vd r2 = r * r;
    vd p = vset(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, r2, vset(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, r2, vset(9.99999999999999999910e-1));
    const vd rp = r * p;
    vd q = vset(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, r2, vset(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, r2, vset(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, r2, vset(2.0));
    vd y = vset(1.0) + (rp + rp) / (q - rp);

    // 2^n via the exponent field; n is integral and within +-1075 here.
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i pow2 =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    y = y * _mm256_castsi256_pd(pow2);

    y = vblend(vset(0.0), y, _mm256_cmp_pd(x, vset(-708.39), _CMP_LT_OQ));
    y = vblend(vset(__builtin_inf()), y,
               _mm256_cmp_pd(x, vset(709.78), _CMP_GT_OQ));
    return y;
}

// expm1(x): Taylor-Horner sum_{k>=2} x^k/k! folded onto x for |x| <= ln2/2,
// exp(x) - 1 elsewhere (cancellation-free outside that strip).
inline vd vexpm1(vd x) {
    vd c = vset(1.0 / 1307674368000.0);  // 1/15!
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 87178291200.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 6227020800.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 479001600.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 39916800.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 3628800.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 362880.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 40320.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 5040.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 720.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 120.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 24.0));
    c = _mm256_fmadd_pd(c, x, vset(1.0 / 6.0));
    c = _mm256_fmadd_pd(c, x, vset(0.5));
    const vd taylor = _mm256_fmadd_pd(x * x, c, x);

    const vd big = vexp(x) - vset(1.0);
    const vd small_mask =
        _mm256_cmp_pd(vabs(x), vset(0.34657359027997264), _CMP_LE_OQ);
    return vblend(taylor, big, small_mask);
}

// tanh(z) for z >= 0 via expm1(-2z)/(2 + expm1(-2z)).
inline vd vtanh_pos(vd z) {
    const vd em = vexpm1(vset(-2.0) * z);
    return (vset(0.0) - em) / (vset(2.0) + em);
}

inline vd vpolya_form(vd e) {
    return vset(0.5) *
           (vset(1.0) + _mm256_sqrt_pd(vset(0.0) - vexpm1(e)));
}

inline vd vpdf(vd x2) {
    return vexp(vset(-0.5) * x2) * vset(formulas::kInvSqrt2Pi);
}

struct Polya {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        return vpolya_form(x2 * vset(-formulas::kTwoOverPi));
    }
};

struct Kouba {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        const vd hx = vset(0.5) * x;
        const vd t = _mm256_sqrt_pd(_mm256_fmadd_pd(hx, hx, vset(1.0))) + hx;
        return vset(1.0) - vpdf(x2) / t;
    }
};

struct Alzer {
    vd operator()(vd x) const {
        return vset(0.5) +
               vset(formulas::kAlzerHalf) * vtanh_pos(vset(formulas::kSqrt2OverPi) * x);
    }
};

struct Abreu {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        const vd a = vexp(vset(0.0) - x2) * vset(1.0 / 12.0);
        const vd b = vpdf(x2) / (vset(1.0) + x);
        return (vset(1.0) - a) - b;
    }
};

struct Neumann {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        return vset(0.5) + (x * vset(formulas::kNeumannScale)) *
                               (vset(2.0) + vexp(vset(-0.5) * x2));
    }
};

struct Yang {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        return vset(0.5) +
               (x * vset(formulas::kYangScale)) *
                   _mm256_fmadd_pd(vset(5.0), vexp(vset(-0.3) * x2), vset(4.0));
    }
};

struct Bercu {
    vd operator()(vd x) const {
        const vd y = x * vset(formulas::kInvSqrt2);
        const vd y2 = y * y;
        vd den = _mm256_fmadd_pd(y2, vset(29.0), vset(-660.0));
        den = _mm256_fmadd_pd(y2, den, vset(1260.0));
        den = _mm256_fmadd_pd(y2, den, vset(37800.0));
        den = _mm256_fmadd_pd(y2, den, vset(113400.0));
        return vset(0.5) + vset(formulas::kBercuScale) * y / den;
    }
};

struct Eidous {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        const vd p = _mm256_fmadd_pd(
            x2, _mm256_fmadd_pd(x2, vset(formulas::kC4), vset(formulas::kC2)),
            vset(1.0));
        return vpolya_form((x2 * vset(-formulas::kTwoOverPi)) * p);
    }
};

struct EidousStar {
    vd operator()(vd x) const {
        const vd x2 = x * x;
        const vd p = _mm256_fmadd_pd(
            x2,
            _mm256_fmadd_pd(x2, vset(formulas::kStarC4), vset(formulas::kStarC2)),
            vset(1.0));
        return vpolya_form((x2 * vset(-formulas::kTwoOverPi)) * p);
    }
};

// Runs every element through identical 4-wide arithmetic; the tail is padded
// so results do not depend on an element's position modulo 4.
template <typename F>
void run_lanes(F f, const double* xs, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, f(_mm256_loadu_pd(xs + i)));
    }
    if (i < n) {
        alignas(32) double in[4] = {0.0, 0.0, 0.0, 0.0};
        alignas(32) double res[4];
        std::memcpy(in, xs + i, (n - i) * sizeof(double));
        _mm256_store_pd(res, f(_mm256_load_pd(in)));
        std::memcpy(out + i, res, (n - i) * sizeof(double));
    }
}

}  // namespace

bool avx2_compiled() noexcept { return true; }

void eval_many_avx2(BoundKind kind, const double* xs, double* out,
                    std::size_t n) {
    switch (kind) {
        case BoundKind::polya: run_lanes(Polya{}, xs, out, n); return;
        case BoundKind::kouba: run_lanes(Kouba{}, xs, out, n); return;
        case BoundKind::alzer: run_lanes(Alzer{}, xs, out, n); return;
        case BoundKind::abreu: run_lanes(Abreu{}, xs, out, n); return;
        case BoundKind::neumann: run_lanes(Neumann{}, xs, out, n); return;
        case BoundKind::yang: run_lanes(Yang{}, xs, out, n); return;
        case BoundKind::bercu: run_lanes(Bercu{}, xs, out, n); return;
        case BoundKind::eidous: run_lanes(Eidous{}, xs, out, n); return;
        case BoundKind::eidous_star: run_lanes(EidousStar{}, xs, out, n); return;
    }
}

void exp_many_avx2(const double* xs, double* out, std::size_t n) {
    run_lanes([](vd x) { return vexp(x); }, xs, out, n);
}

void expm1_many_avx2(const double* xs, double* out, std::size_t n) {
    run_lanes([](vd x) { return vexpm1(x); }, xs, out, n);
}

}  // namespace phibound::kernels
