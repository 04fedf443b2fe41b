#include "phibound/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bound_formulas.hpp"
#include "phibound/kernels.hpp"
#include "phibound/reference.hpp"

namespace phibound {
namespace {

constexpr double kGoldenRatioInv = 0.6180339887498949;  // (sqrt5 - 1)/2
constexpr double kCoarseTieSlack = 1e-18;
constexpr int kMaxGoldenIterations = 500;
constexpr int kMaxBisectIterations = 200;

void require_interval(double lo, double hi, double x_tolerance,
                      const char* fn) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
        throw std::domain_error(std::string(fn) +
                                ": need a finite interval 0 <= lo < hi");
    }
    if (!(x_tolerance > 0.0)) {
        throw std::domain_error(std::string(fn) + ": x_tolerance must be > 0");
    }
}

double signed_error(BoundKind kind, double x) {
    return eval_bound(kind, x) - phi_ref(x);
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::domain_error("Grid: need at least 2 points");
    }
    double prev = -1.0;
    for (double p : points_) {
        if (!std::isfinite(p) || p < 0.0) {
            throw std::domain_error("Grid: points must be finite and >= 0");
        }
        if (!(p > prev)) {
            throw std::domain_error("Grid: points must be strictly increasing");
        }
        prev = p;
    }
}

Grid Grid::linear(double start, double stop, std::size_t count) {
    if (count < 2) throw std::domain_error("Grid: need at least 2 points");
    std::vector<double> pts(count);
    const double span = stop - start;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        pts[i] = start + span * (static_cast<double>(i) /
                                 static_cast<double>(count - 1));
    }
    pts[count - 1] = stop;
    return Grid(std::move(pts));
}

Grid Grid::logspace(double start, double stop, std::size_t count) {
    if (count < 2) throw std::domain_error("Grid: need at least 2 points");
    if (!(start > 0.0)) {
        throw std::domain_error("Grid: logspace needs start > 0");
    }
    std::vector<double> pts(count);
    const double la = std::log(start);
    const double lb = std::log(stop);
    for (std::size_t i = 0; i + 1 < count; ++i) {
        pts[i] = std::exp(la + (lb - la) * (static_cast<double>(i) /
                                            static_cast<double>(count - 1)));
    }
    pts[0] = start;
    pts[count - 1] = stop;
    return Grid(std::move(pts));
}

Grid Grid::from_points(std::vector<double> points) {
    return Grid(std::move(points));
}

ErrorRow error_at(BoundKind kind, double x) {
    const double bound_value = eval_bound(kind, x);
    const double reference_value = phi_ref(x);
    return ErrorRow{x, bound_value, reference_value,
                    bound_value - reference_value, !in_validity(kind, x)};
}

std::vector<ErrorRow> scan_errors(BoundKind kind, const Grid& grid) {
    const auto& xs = grid.points();
    std::vector<double> values(xs.size());
    eval_bound_many(kind, xs, values);
    std::vector<ErrorRow> rows;
    rows.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double ref = phi_ref(xs[i]);
        rows.push_back(ErrorRow{xs[i], values[i], ref, values[i] - ref,
                                !in_validity(kind, xs[i])});
    }
    return rows;
}

ExtremumReport max_abs_error(BoundKind kind, double lo, double hi,
                             double x_tolerance, std::size_t coarse_points) {
    require_interval(lo, hi, x_tolerance, "max_abs_error");
    if (hi > bound_info(kind).validity_max) {
        throw std::domain_error(
            "max_abs_error: interval extends beyond the bound's validity");
    }
    if (coarse_points < 3) coarse_points = 3;

    // Coarse scan. Near-ties (within kCoarseTieSlack) keep the smaller x.
    const Grid coarse = Grid::linear(lo, hi, coarse_points);
    const auto& xs = coarse.points();
    std::vector<double> values(xs.size());
    eval_bound_many(kind, xs, values);
    std::size_t best = 0;
    double best_f = -1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = std::abs(values[i] - phi_ref(xs[i]));
        if (f > best_f + kCoarseTieSlack) {
            best_f = f;
            best = i;
        }
    }

    // Golden-section refinement of the bracket around the best cell.
    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[std::min(best + 1, xs.size() - 1)];
    const auto f_abs = [kind](double x) {
        return std::abs(signed_error(kind, x));
    };
    double best_x = xs[best];
    double best_val = best_f;
    double c = b - kGoldenRatioInv * (b - a);
    double d = a + kGoldenRatioInv * (b - a);
    double fc = f_abs(c);
    double fd = f_abs(d);
    int iterations = 0;
    while (b - a > x_tolerance && iterations < kMaxGoldenIterations) {
        ++iterations;
        if (fc > fd) {
            if (fc > best_val) {
                best_val = fc;
                best_x = c;
            }
            b = d;
            d = c;
            fd = fc;
            c = b - kGoldenRatioInv * (b - a);
            fc = f_abs(c);
        } else {
            if (fd > best_val) {
                best_val = fd;
                best_x = d;
            }
            a = c;
            c = d;
            fc = fd;
            d = a + kGoldenRatioInv * (b - a);
            fd = f_abs(d);
        }
    }

    ExtremumReport report;
    report.location = std::clamp(best_x, a, b);
    report.value = signed_error(kind, report.location);
    report.bracket = {a, b};
    report.x_tolerance = x_tolerance;
    report.iterations = iterations;
    report.converged = (b - a) <= x_tolerance;
    return report;
}

double eidous_error_derivative(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error(
            "eidous_error_derivative: argument must be finite and >= 0");
    }
    if (x == 0.0) return 0.0;  // removable 0/0; the limit is 0
    using namespace formulas;
    const double x2 = x * x;
    const double p = exponent_poly(x2);
    const double e = (x2 * -kTwoOverPi) * p;
    // e(x) = -(2/pi) x^2 p(x), so e'(x) = -(2/pi) x (2 p(x) + x p'(x)).
    const double e_prime =
        -kTwoOverPi * x * (2.0 * p + x2 * (2.0 * kC2 + 4.0 * kC4 * x2));
    const double radicand = -std::expm1(e);
    if (radicand == 0.0) return 0.0;  // x so small the exponent underflows
    const double bound_slope =
        std::exp(e) * -e_prime / (4.0 * std::sqrt(radicand));
    return bound_slope - std_normal_pdf(x);
}

ExtremumReport eidous_error_stationary_point(double lo, double hi,
                                             double x_tolerance) {
    require_interval(lo, hi, x_tolerance, "eidous_error_stationary_point");
    double fa = eidous_error_derivative(lo);
    const double fb = eidous_error_derivative(hi);
    if ((fa > 0.0) == (fb > 0.0)) {
        throw std::invalid_argument(
            "eidous_error_stationary_point: derivative does not change sign "
            "over the bracket");
    }
    double a = lo;
    double b = hi;
    int iterations = 0;
    while (b - a > x_tolerance && iterations < kMaxBisectIterations) {
        ++iterations;
        const double mid = 0.5 * (a + b);
        const double fm = eidous_error_derivative(mid);
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }

    ExtremumReport report;
    report.location = 0.5 * (a + b);
    report.value = signed_error(BoundKind::eidous, report.location);
    report.bracket = {a, b};
    report.x_tolerance = x_tolerance;
    report.iterations = iterations;
    report.converged = (b - a) <= x_tolerance;
    return report;
}

CrossoverCheck polya_crossover() {
    using formulas::kPi;
    CrossoverCheck check;
    check.exact = std::sqrt((kPi - 3.0) /
                            (7.0 * kPi / 30.0 + 40001.0 / (10000.0 * kPi) - 2.0));
    check.published = 4.74915;

    constexpr double slack = 1e-15;
    const auto diff_many = [](const Grid& grid, std::vector<double>& out) {
        const auto& xs = grid.points();
        std::vector<double> ei(xs.size());
        std::vector<double> po(xs.size());
        eval_bound_many(BoundKind::eidous, xs, ei);
        eval_bound_many(BoundKind::polya, xs, po);
        out.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = ei[i] - po[i];
    };

    std::vector<double> diff;
    const Grid below = Grid::linear(0.0, check.exact, 200001);
    diff_many(below, diff);
    check.max_diff_below = *std::max_element(diff.begin(), diff.end());

    const Grid above = Grid::linear(check.exact, 40.0, 200001);
    diff_many(above, diff);
    check.min_diff_above = *std::min_element(diff.begin(), diff.end());

    // Bracket the sign flip on a fine window around the exact value.
    const Grid window = Grid::linear(check.exact - 0.01, check.exact + 0.01, 20001);
    diff_many(window, diff);
    check.flip_lower = window.front();
    check.flip_upper = window.back();
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (diff[i] < -slack) check.flip_lower = window.points()[i];
    }
    for (std::size_t i = diff.size(); i-- > 0;) {
        if (diff[i] > slack) check.flip_upper = window.points()[i];
    }

    check.sign_verified = check.max_diff_below <= slack &&
                          check.min_diff_above >= -slack &&
                          check.flip_lower < check.flip_upper;
    return check;
}

VerificationReport verify_upper_bound(BoundKind kind, const Grid& grid,
                                      double slack) {
    if (!(slack >= 0.0)) {
        throw std::domain_error("verify_upper_bound: slack must be >= 0");
    }
    const auto& xs = grid.points();
    std::vector<double> values(xs.size());
    eval_bound_many(kind, xs, values);
    double min_error = std::numeric_limits<double>::infinity();
    double min_location = xs.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double err = values[i] - phi_ref(xs[i]);
        if (err < min_error) {
            min_error = err;
            min_location = xs[i];
        }
    }

    VerificationReport report;
    report.kind = kind;
    report.grid_points = xs.size();
    report.grid_from = grid.front();
    report.grid_to = grid.back();
    report.worst_violation = std::min(min_error, 0.0);
    report.worst_location = min_location;
    report.slack = slack;
    report.passed = report.worst_violation >= -slack;
    return report;
}

double error_ratio_eidous_vs_star() {
    const auto ei = max_abs_error(BoundKind::eidous, 0.0, 40.0, 1e-8);
    const auto star = max_abs_error(BoundKind::eidous_star, 0.0, 40.0, 1e-8);
    return std::abs(ei.value) / std::abs(star.value);
}

std::span<const double> comparison_abscissae() {
    static const double xs[] = {
        0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9, 2.1,
        2.3, 2.5, 2.7, 2.9, 3.1, 3.3, 3.5, 3.7, 3.9, 4.1, 4.4,
        4.7, 5.0, 5.5, 6.0, 6.5, 7.0, 7.5, 8.0, 8.5,
    };
    return xs;
}

std::span<const BoundKind> comparison_column_order() {
    static const BoundKind order[] = {
        BoundKind::kouba, BoundKind::alzer,  BoundKind::abreu,
        BoundKind::neumann, BoundKind::yang, BoundKind::bercu,
        BoundKind::polya, BoundKind::eidous,
    };
    return order;
}

std::vector<TableCell> comparison_table(std::span<const double> xs) {
    if (xs.empty()) {
        throw std::domain_error("comparison_table: need at least one abscissa");
    }
    std::vector<TableCell> cells;
    cells.reserve(xs.size() * comparison_column_order().size());
    for (double x : xs) {
        for (BoundKind kind : comparison_column_order()) {
            cells.push_back(TableCell{kind, error_at(kind, x)});
        }
    }
    return cells;
}

}  // namespace phibound
