#include "phibound/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bound_formulas.hpp"

namespace phibound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bercu's rational form is stated for y = x/sqrt2 <= 4.418.
const double kBercuValidityMax = 4.418 * std::sqrt(2.0);

const BoundInfo kInfos[] = {
    {BoundKind::polya, "polya", true, kInf},
    {BoundKind::kouba, "kouba", true, kInf},
    {BoundKind::alzer, "alzer", true, kInf},
    {BoundKind::abreu, "abreu", true, kInf},
    {BoundKind::neumann, "neumann", true, kInf},
    {BoundKind::yang, "yang", true, kInf},
    {BoundKind::bercu, "bercu", true, kBercuValidityMax},
    {BoundKind::eidous, "eidous", true, kInf},
    // An approximation only: crosses Phi, so neither an upper nor lower bound.
    {BoundKind::eidous_star, "eidous_star", false, kInf},
};

void require_bound_arg(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(fn) + ": argument must be finite");
    }
    if (x < 0.0) {
        throw std::domain_error(std::string(fn) +
                                ": bounds are stated for x >= 0 only");
    }
}

}  // namespace

const BoundInfo& bound_info(BoundKind kind) {
    return kInfos[static_cast<int>(kind)];
}

std::optional<BoundKind> bound_from_name(std::string_view name) {
    for (const auto& info : kInfos) {
        if (info.name == name) return info.kind;
    }
    return std::nullopt;
}

bool in_validity(BoundKind kind, double x) {
    return x >= 0.0 && x <= bound_info(kind).validity_max;
}

double eidous_c2() { return formulas::kC2; }
double eidous_c4() { return formulas::kC4; }

double exponent_polynomial(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("exponent_polynomial: argument must be finite");
    }
    return formulas::exponent_poly(x * x);
}

double eval_bound(BoundKind kind, double x) {
    require_bound_arg(x, "eval_bound");
    return formulas::eval(kind, x);
}

double q_bound_lower(BoundKind kind, double x) {
    require_bound_arg(x, "q_bound_lower");
    return 1.0 - formulas::eval(kind, x);
}

double erf_bound_upper(BoundKind kind, double y) {
    require_bound_arg(y, "erf_bound_upper");
    return 2.0 * formulas::eval(kind, y * std::sqrt(2.0)) - 1.0;
}

}  // namespace phibound
