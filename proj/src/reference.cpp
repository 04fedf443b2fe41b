#include "phibound/reference.hpp"

#ifdef __FAST_MATH__
#error fast math enabled (-ffast-math); this would negate compensated summation.
#endif

#include <cmath>
#include <stdexcept>
#include <string>

namespace phibound {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;
constexpr double kTwoOverSqrtPi = 1.1283791670955126;
constexpr double kInvSqrtPi = 0.56418958354775629;
constexpr double kInvSqrt2Pi = 0.39894228040143268;

constexpr int kMaxSeriesTerms = 400;
constexpr int kMaxCfIterations = 400;

[[noreturn]] void throw_nonfinite(const char* fn) {
    throw std::domain_error(std::string(fn) + ": argument must be finite");
}

void require_finite(double v, const char* fn) {
    if (!std::isfinite(v)) throw_nonfinite(fn);
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

// x*x as an exact head/tail pair.
struct Squared {
    double hi;
    double lo;
};
Squared exact_square(double x) {
    const double hi = x * x;
    return {hi, std::fma(x, x, -hi)};
}

// exp(-(hi+lo)) to ~1 ulp for large arguments, where the rounding of the
// squared argument alone would otherwise cost ~u*eps relative error.
double exp_neg_split(double hi, double lo) {
    return std::exp(-hi) * (1.0 - lo);
}

double series_stop(const ReferenceAccuracy& acc) {
    return acc.target_relative_error * (1.0 / 32.0);
}

// erf(y) for 0 <= y < ~series_tail_switch via the cancellation-free series
//   erf(y) = (2y/sqrt(pi)) * exp(-u) * sum_{n>=0} (2u)^n / (2n+1)!!,  u = y^2.
// All terms are positive, so the compensated sum carries no cancellation and
// the exp(-u) sensitivity to the rounding of u is offset by the sum's.
double erf_series(double y, double u, const ReferenceAccuracy& acc) {
    const double stop = series_stop(acc);
    CompensatedSum s;
    double term = 1.0;
    s.add(term);
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        term *= 2.0 * u / (2.0 * n + 3.0);
        s.add(term);
        if (term < s.sum * stop) break;
    }
    return kTwoOverSqrtPi * y * std::exp(-u) * s.value();
}

// erfc(y) beyond the tail switch via the Legendre continued fraction
//   erfc(y) = exp(-y^2)/sqrt(pi) * 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
// evaluated with the modified Lentz algorithm. exp(-y^2) arrives split so
// the result stays relatively accurate down to underflow (which yields 0).
double erfc_cf(double y, double u_hi, double u_lo, const ReferenceAccuracy& acc) {
    constexpr double tiny = 1e-300;
    const double stop = series_stop(acc);
    double f = (y != 0.0) ? y : tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= kMaxCfIterations; ++k) {
        const double a = 0.5 * k;
        d = y + a * d;
        if (d == 0.0) d = tiny;
        c = y + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < stop) break;
    }
    return exp_neg_split(u_hi, u_lo) * kInvSqrtPi / f;
}

// erfc(y) for y >= 0 with pre-split y^2 = u_hi + u_lo. One switch governs
// both the Phi and the complement side, so reflected evaluations reuse the
// same series value and stay consistent to ~1 ulp of 1.
double erfc_positive(double y, double u_hi, double u_lo,
                     const ReferenceAccuracy& acc) {
    if (y >= acc.series_tail_switch) {
        return erfc_cf(y, u_hi, u_lo, acc);
    }
    return 1.0 - erf_series(y, u_hi + u_lo, acc);
}

// Tail-stable Q(x) for x >= 0.
double q_positive(double x, const ReferenceAccuracy& acc) {
    const double y = x * kInvSqrt2;
    const auto x2 = exact_square(x);
    return 0.5 * erfc_positive(y, 0.5 * x2.hi, 0.5 * x2.lo, acc);
}

// Phi(x) for x >= 0.
double phi_positive(double x, const ReferenceAccuracy& acc) {
    const double y = x * kInvSqrt2;
    if (y < acc.series_tail_switch) {
        const auto x2 = exact_square(x);
        return 0.5 + 0.5 * erf_series(y, 0.5 * x2.hi + 0.5 * x2.lo, acc);
    }
    return 1.0 - q_positive(x, acc);
}

const ReferenceAccuracy& default_accuracy() {
    static const ReferenceAccuracy acc{};
    return acc;
}

}  // namespace

void ReferenceAccuracy::validate() const {
    if (!(target_relative_error > 0.0)) {
        throw std::domain_error("ReferenceAccuracy: target_relative_error must be > 0");
    }
    if (!(series_tail_switch > 0.0)) {
        throw std::domain_error("ReferenceAccuracy: series_tail_switch must be > 0");
    }
}

double std_normal_pdf(double x) {
    require_finite(x, "std_normal_pdf");
    const auto x2 = exact_square(x);
    return kInvSqrt2Pi * exp_neg_split(0.5 * x2.hi, 0.5 * x2.lo);
}

double phi_ref(double x, const ReferenceAccuracy& acc) {
    require_finite(x, "phi_ref");
    acc.validate();
    return x >= 0.0 ? phi_positive(x, acc) : q_positive(-x, acc);
}

double phi_ref(double x) { return phi_ref(x, default_accuracy()); }

double q_ref(double x, const ReferenceAccuracy& acc) {
    require_finite(x, "q_ref");
    acc.validate();
    return x >= 0.0 ? q_positive(x, acc) : phi_positive(-x, acc);
}

double q_ref(double x) { return q_ref(x, default_accuracy()); }

double erf_ref(double y, const ReferenceAccuracy& acc) {
    require_finite(y, "erf_ref");
    acc.validate();
    const double a = std::abs(y);
    const auto y2 = exact_square(a);
    double value;
    if (a < acc.series_tail_switch) {
        value = erf_series(a, y2.hi + y2.lo, acc);
    } else {
        value = 1.0 - erfc_cf(a, y2.hi, y2.lo, acc);
    }
    return y < 0.0 ? -value : value;
}

double erf_ref(double y) { return erf_ref(y, default_accuracy()); }

double erfc_ref(double y, const ReferenceAccuracy& acc) {
    require_finite(y, "erfc_ref");
    acc.validate();
    if (y < 0.0) return 2.0 - erfc_ref(-y, acc);
    const auto y2 = exact_square(y);
    return erfc_positive(y, y2.hi, y2.lo, acc);
}

double erfc_ref(double y) { return erfc_ref(y, default_accuracy()); }

}  // namespace phibound
