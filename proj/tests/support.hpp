#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "phibound/bounds.hpp"

// Shared test helpers: ulp comparison, deterministic input generation, and
// the independent test-side oracles (long-double tail-form h for finite
// differences, composite-Simpson quadrature for erf).

namespace testsupport {

inline std::int64_t ordered_bits(double v) {
    std::int64_t i;
    std::memcpy(&i, &v, sizeof i);
    return i >= 0 ? i : std::numeric_limits<std::int64_t>::min() - i;
}

/// Bit distance between doubles; 0 iff identical value (+0 == -0),
/// huge for mismatched NaN/inf.
inline std::int64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    if (!std::isfinite(a) || !std::isfinite(b)) {
        return std::numeric_limits<std::int64_t>::max();
    }
    const std::int64_t d = ordered_bits(a) - ordered_bits(b);
    return d < 0 ? -d : d;
}

struct Rng {
    std::mt19937_64 gen{0x9e3779b97f4a7c15ull};

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    /// Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
};

// ---------------------------------------------------------------------------
// Long-double oracle for the eidous error curve h(x) = bound(x) - Phi(x),
// evaluated in tail form h = Q - Q_bound so that finite differences of h
// resolve derivatives as small as 1e-9 at step 1e-6. Independent of the
// production code path (its own series/continued fraction).
// ---------------------------------------------------------------------------

inline constexpr long double kPiL = std::numbers::pi_v<long double>;

inline long double erf_series_ld(long double y) {
    const long double u = y * y;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int n = 0; n < 600; ++n) {
        term *= 2.0L * u / (2.0L * n + 3.0L);
        sum += term;
        if (term < sum * 1e-22L) break;
    }
    const long double pref = 2.0L / sqrtl(kPiL);
    return pref * y * expl(-u) * sum;
}

inline long double erfc_cf_ld(long double y) {
    constexpr long double tiny = 1e-1000L;
    long double f = (y != 0.0L) ? y : tiny;
    long double c = f;
    long double d = 0.0L;
    for (int k = 1; k <= 2000; ++k) {
        const long double a = 0.5L * k;
        d = y + a * d;
        if (d == 0.0L) d = tiny;
        c = y + a / c;
        if (c == 0.0L) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        f *= delta;
        if (fabsl(delta - 1.0L) < 1e-21L) break;
    }
    return expl(-y * y) / sqrtl(kPiL) / f;
}

inline long double q_ld(long double x) {
    const long double y = x / sqrtl(2.0L);
    if (y >= 1.2L) return 0.5L * erfc_cf_ld(y);
    return 0.5L * (1.0L - erf_series_ld(y));
}

/// Upper-tail form of the eidous bound: 1 - bound(x), cancellation-free.
/// Uses the same (double) quartic coefficients as the production formula.
inline long double q_eidous_ld(long double x) {
    const long double c2 = phibound::eidous_c2();
    const long double c4 = phibound::eidous_c4();
    const long double x2 = x * x;
    const long double p = 1.0L + x2 * (c2 + c4 * x2);
    const long double e = -(2.0L * x2 / kPiL) * p;
    const long double radicand = -expm1l(e);
    return expl(e) / (2.0L * (1.0L + sqrtl(radicand)));
}

inline long double eidous_h_ld(long double x) {
    return q_ld(x) - q_eidous_ld(x);
}

/// Central finite difference of the long-double h at the given step.
inline double fd_eidous_error_derivative(double x, double step) {
    const long double s = step;
    const long double hi = eidous_h_ld(static_cast<long double>(x) + s);
    const long double lo = eidous_h_ld(static_cast<long double>(x) - s);
    return static_cast<double>((hi - lo) / (2.0L * s));
}

// ---------------------------------------------------------------------------
// Brute-force quadrature oracle: (2/sqrt(pi)) * integral_0^y exp(-t^2) dt by
// composite Simpson with Kahan-compensated accumulation.
// ---------------------------------------------------------------------------

inline double erf_by_quadrature(double y, std::size_t panels) {
    const double h = y / static_cast<double>(panels);
    double sum = 0.0;
    double carry = 0.0;
    const auto add = [&](double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    };
    add(std::exp(-0.0));
    add(std::exp(-y * y));
    for (std::size_t i = 1; i < panels; ++i) {
        const double t = static_cast<double>(i) * h;
        add((i % 2 ? 4.0 : 2.0) * std::exp(-t * t));
    }
    const double integral = (h / 3.0) * (sum + carry);
    return (2.0 / std::sqrt(std::numbers::pi)) * integral;
}

}  // namespace testsupport
