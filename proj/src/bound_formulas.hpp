#pragma once

#include <cmath>
#include <numbers>

#include "phibound/bounds.hpp"

// Scalar reference formulas for the nine bounds. Shared by the single-point
// API and the scalar batch kernels; the AVX2 kernels mirror these operation
// for operation so that lane results stay within a few ulp of the scalar
// path. All functions assume x >= 0 and finite (validated by callers).

namespace phibound::formulas {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoOverPi = 2.0 / kPi;
inline constexpr double kInvSqrt2 = 0.70710678118654752;
inline constexpr double kInvSqrtPi = 0.56418958354775629;
inline constexpr double kInvSqrt2Pi = 0.39894228040143268;
inline constexpr double kSqrt2OverPi = 0.79788456080286536;

// Exact-in-pi exponent correction coefficients, evaluated in extended
// precision and rounded once. The rounded decimal forms seen alongside the
// formulas shift the small-x error by orders of magnitude and move the
// Polya crossover, so they are never used in evaluation.
inline constexpr long double kPiL = std::numbers::pi_v<long double>;
inline constexpr double kC2 =
    static_cast<double>((3.0L - kPiL) / (3.0L * kPiL));
inline constexpr double kC4 = static_cast<double>(
    7.0L / 90.0L + 40001.0L / (30000.0L * kPiL * kPiL) - 2.0L / (3.0L * kPiL));

// Simplified decimal coefficients of the eidous_star approximation.
inline constexpr double kStarC2 = -0.01506;
inline constexpr double kStarC4 = 0.00063;

inline constexpr double kAlzerHalf = 1.0407 / 2.0;
inline constexpr double kNeumannScale = kInvSqrt2Pi / 3.0;
inline constexpr double kYangScale = kInvSqrt2Pi / 9.0;
inline constexpr double kBercuScale = 113400.0 * kInvSqrtPi;

// Polya-form evaluation (1 + sqrt(1 - exp(e)))/2 for e <= 0. The bare
// radical sqrt(1 - exp(e))/2 maps onto [0, 1/2) and cannot satisfy
// Phi(0) = 1/2 or the x -> inf limit 1; the leading "1 +" is the classical
// normalization and is what reproduces the tabulated errors. expm1 keeps
// the radicand exact where 1 - exp(e) would cancel.
inline double polya_form(double e) {
    return 0.5 * (1.0 + std::sqrt(-std::expm1(e)));
}

inline double pdf(double x2) { return std::exp(-0.5 * x2) * kInvSqrt2Pi; }

inline double polya(double x) {
    const double x2 = x * x;
    return polya_form(x2 * -kTwoOverPi);
}

inline double kouba(double x) {
    const double x2 = x * x;
    const double hx = 0.5 * x;
    const double t = std::sqrt(std::fma(hx, hx, 1.0)) + hx;
    return 1.0 - pdf(x2) / t;
}

inline double alzer(double x) {
    return 0.5 + kAlzerHalf * std::tanh(kSqrt2OverPi * x);
}

inline double abreu(double x) {
    const double x2 = x * x;
    const double a = std::exp(-x2) * (1.0 / 12.0);
    const double b = pdf(x2) / (1.0 + x);
    return (1.0 - a) - b;
}

inline double neumann(double x) {
    const double x2 = x * x;
    return 0.5 + (x * kNeumannScale) * (2.0 + std::exp(-0.5 * x2));
}

inline double yang(double x) {
    const double x2 = x * x;
    return 0.5 + (x * kYangScale) * (4.0 + 5.0 * std::exp(-0.3 * x2));
}

inline double bercu(double x) {
    const double y = x * kInvSqrt2;
    const double y2 = y * y;
    const double den =
        113400.0 +
        y2 * (37800.0 + y2 * (1260.0 + y2 * (-660.0 + y2 * 29.0)));
    return 0.5 + kBercuScale * y / den;
}

inline double exponent_poly(double x2) {
    return 1.0 + x2 * (kC2 + kC4 * x2);
}

inline double eidous(double x) {
    const double x2 = x * x;
    return polya_form((x2 * -kTwoOverPi) * exponent_poly(x2));
}

inline double eidous_star(double x) {
    const double x2 = x * x;
    const double p = 1.0 + x2 * (kStarC2 + kStarC4 * x2);
    return polya_form((x2 * -kTwoOverPi) * p);
}

inline double eval(BoundKind kind, double x) {
    switch (kind) {
        case BoundKind::polya: return polya(x);
        case BoundKind::kouba: return kouba(x);
        case BoundKind::alzer: return alzer(x);
        case BoundKind::abreu: return abreu(x);
        case BoundKind::neumann: return neumann(x);
        case BoundKind::yang: return yang(x);
        case BoundKind::bercu: return bercu(x);
        case BoundKind::eidous: return eidous(x);
        case BoundKind::eidous_star: return eidous_star(x);
    }
    return 0.0;  // unreachable
}

}  // namespace phibound::formulas
