#pragma once

#include <functional>
#include <utility>

namespace upgrade::num {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// `abs_tol`. Throws std::runtime_error when the recursion exceeds
/// `max_depth` without reaching the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10, int max_depth = 60);

/// Golden-section minimization of a unimodal f over [a, b], shrinking the
/// bracket until its width is at most `width`. Returns {argmin, min}.
std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double a, double b, double width);

/// Minimizes f over [a, b] by evaluating `grid_points` equally spaced
/// samples and refining the best bracket with golden-section search.
/// Guards against missed basins when f is not unimodal.
std::pair<double, double> grid_then_golden_min(
    const std::function<double(double)>& f, double a, double b,
    int grid_points, double width);

}  // namespace upgrade::num
