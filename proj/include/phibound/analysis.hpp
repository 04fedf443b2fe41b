#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "phibound/bounds.hpp"

// Quantifies bound tightness against the reference oracle: signed error
// curves, extremum localization, the eidous/polya crossover, inequality
// verification over grids, and the error-comparison table.

namespace phibound {

/// A finite, strictly increasing set of evaluation abscissae (all >= 0,
/// at least two points). Construction validates and throws
/// std::domain_error on violations.
class Grid {
  public:
    static Grid linear(double start, double stop, std::size_t count);
    static Grid logspace(double start, double stop, std::size_t count);
    static Grid from_points(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

  private:
    explicit Grid(std::vector<double> points);
    std::vector<double> points_;
};

/// One signed-error evaluation: error = bound_value - reference_value.
struct ErrorRow {
    double x;
    double bound_value;
    double reference_value;
    double error;
    bool out_of_validity;
};

struct TableCell {
    BoundKind kind;
    ErrorRow row;
};

/// Result of a bracketed extremum or stationary-point search.
struct ExtremumReport {
    double location;
    double value;  // signed error at location, re-evaluated at report time
    std::pair<double, double> bracket;
    double x_tolerance;
    int iterations;
    bool converged;
};

/// Outcome of checking bound >= reference over a grid.
struct VerificationReport {
    BoundKind kind;
    std::size_t grid_points;
    double grid_from;
    double grid_to;
    bool passed;             // worst_violation >= -slack
    double worst_violation;  // most negative error over the grid, 0 if none
    double worst_location;
    double slack;
};

/// The abscissa below which the eidous bound is tighter than polya, with a
/// numeric sign verification around it.
struct CrossoverCheck {
    double exact;      // closed form from the exact-in-pi coefficients
    double published;  // commonly quoted rounded figure (4.74915)
    bool sign_verified;
    double max_diff_below;  // max(eidous - polya) on [0, exact]
    double min_diff_above;  // min(eidous - polya) on [exact, 40]
    double flip_lower;      // last x with eidous - polya < -slack
    double flip_upper;      // first x with eidous - polya > +slack
};

ErrorRow error_at(BoundKind kind, double x);

/// One ErrorRow per grid point, order preserved. Bound values go through the
/// dispatched batch kernels.
std::vector<ErrorRow> scan_errors(BoundKind kind, const Grid& grid);

/// Locate the global maximum of |error| on [lo, hi]: coarse scan followed by
/// golden-section refinement of the best bracket. Near-ties (within 1e-18)
/// resolve to the smaller x. The interval must lie inside the bound's
/// validity interval.
ExtremumReport max_abs_error(BoundKind kind, double lo, double hi,
                             double x_tolerance,
                             std::size_t coarse_points = 4097);

/// d/dx of (eidous bound - Phi), evaluated analytically from the closed
/// form. The x = 0 endpoint is the (zero) limit of a removable 0/0.
double eidous_error_derivative(double x);

/// Root of eidous_error_derivative over a sign-changing bracket, located by
/// bisection to x_tolerance. The value field carries the eidous error at the
/// root. Throws std::invalid_argument when the bracket does not change sign.
ExtremumReport eidous_error_stationary_point(double lo, double hi,
                                             double x_tolerance);

CrossoverCheck polya_crossover();

/// Scan the signed error over a grid; passes iff the most negative error
/// stays above -slack.
VerificationReport verify_upper_bound(BoundKind kind, const Grid& grid,
                                      double slack);

/// max|error| of eidous divided by max|error| of eidous_star over [0, 40].
double error_ratio_eidous_vs_star();

/// The abscissae of the published error-comparison table (31 values,
/// 0.1 .. 8.5) and its column order.
std::span<const double> comparison_abscissae();
std::span<const BoundKind> comparison_column_order();

/// Error rows for every (x, column) pair, row-major in the published column
/// order. Single-point (scalar) evaluation path for machine-independent
/// output.
std::vector<TableCell> comparison_table(std::span<const double> xs);

}  // namespace phibound
