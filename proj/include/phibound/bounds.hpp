#pragma once

#include <array>
#include <optional>
#include <string_view>

// Closed-form upper bounds and approximations for the standard normal CDF,
// with validity metadata and the derived Q-function / error-function
// wrappers. All formulas are stated for x >= 0; negative arguments are a
// domain error (callers wanting x < 0 must reflect explicitly).

namespace phibound {

enum class BoundKind {
    polya,
    kouba,
    alzer,
    abreu,
    neumann,
    yang,
    bercu,
    eidous,
    eidous_star,
};

inline constexpr std::array<BoundKind, 9> all_bound_kinds = {
    BoundKind::polya,  BoundKind::kouba,  BoundKind::alzer,
    BoundKind::abreu,  BoundKind::neumann, BoundKind::yang,
    BoundKind::bercu,  BoundKind::eidous, BoundKind::eidous_star,
};

struct BoundInfo {
    BoundKind kind;
    std::string_view name;        // CLI identifier
    bool guaranteed_upper_bound;  // Phi(x) <= bound on the validity interval
    double validity_max;          // validity interval is [0, validity_max]
};

const BoundInfo& bound_info(BoundKind kind);
std::optional<BoundKind> bound_from_name(std::string_view name);

/// True when x lies inside the bound's validity interval.
bool in_validity(BoundKind kind, double x);

// Quartic exponent-correction coefficients: p(x) = 1 + c2 x^2 + c4 x^4.
// Always evaluated from the exact pi expressions, never from rounded
// decimals (the rounded forms shift the small-x error by orders of
// magnitude and move the Polya crossover).
double eidous_c2();  // (3 - pi)/(3 pi)            ~ -0.0150234
double eidous_c4();  // 7/90 + 40001/(30000 pi^2) - 2/(3 pi) ~ 6.695e-4

/// p(x) = 1 + c2 x^2 + c4 x^4; positive for all real x (minimum ~0.916).
double exponent_polynomial(double x);

/// Evaluate one bound formula at x >= 0. Outside the validity interval the
/// value is still computed (see in_validity); x < 0 or non-finite throws
/// std::domain_error.
double eval_bound(BoundKind kind, double x);

/// 1 - eval_bound(kind, x): a lower bound on Q(x) when the kind is a
/// guaranteed upper bound.
double q_bound_lower(BoundKind kind, double x);

/// 2*eval_bound(kind, sqrt2*y) - 1: an upper bound on erf(y) when the kind
/// is a guaranteed upper bound.
double erf_bound_upper(BoundKind kind, double y);

}  // namespace phibound
