#pragma once

// High-accuracy reference evaluation of the standard normal CDF and its
// related special functions. Everything here is the measuring stick the
// closed-form bounds are compared against, so it is deliberately built from
// first principles (power series + continued fraction with compensated
// summation) and must never depend on any bound formula.

namespace phibound {

/// Tuning knobs for the reference oracle.
///
/// target_relative_error is the accuracy goal for phi_ref on its primary
/// domain (x >= 0 and both tails), expressed as a relative error; the default
/// is four units in the last place of double precision. series_tail_switch is
/// the erf-argument magnitude beyond which the continued-fraction tail
/// algorithm replaces the power series.
struct ReferenceAccuracy {
    double target_relative_error = 4.0 * 2.220446049250313e-16;
    double series_tail_switch = 3.0;

    void validate() const;  // throws std::domain_error on nonpositive fields
};

/// Standard normal density exp(-x^2/2)/sqrt(2*pi).
/// Underflows to 0 for |x| beyond ~38.6; that is a value, not an error.
double std_normal_pdf(double x);

/// Standard normal CDF. Power series below the tail switch, continued
/// fraction beyond it; negative arguments go through the reflection
/// Phi(x) = Q(-x).
double phi_ref(double x);
double phi_ref(double x, const ReferenceAccuracy& acc);

/// Upper tail Q(x) = 1 - Phi(x), computed tail-stably: relative accuracy is
/// preserved for large x (down to where Q underflows, which returns 0).
double q_ref(double x);
double q_ref(double x, const ReferenceAccuracy& acc);

/// Error function and its complement. erf is odd; erfc(y) = 2*q_ref(sqrt2*y).
double erf_ref(double y);
double erf_ref(double y, const ReferenceAccuracy& acc);
double erfc_ref(double y);
double erfc_ref(double y, const ReferenceAccuracy& acc);

}  // namespace phibound
