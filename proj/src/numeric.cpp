#include "upgrade/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upgrade::num {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw std::runtime_error(
        "quadrature did not converge within the recursion cap; the integrand "
        "is likely ill-posed on this interval");
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double a, double b, double width) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  // Keep the best sample seen; the midpoint is not always it.
  if (f1 <= fm && f1 <= f2) return {x1, f1};
  if (f2 <= fm) return {x2, f2};
  return {xm, fm};
}

std::pair<double, double> grid_then_golden_min(
    const std::function<double(double)>& f, double a, double b,
    int grid_points, double width) {
  if (b <= a) return {a, f(a)};
  grid_points = std::max(grid_points, 3);
  int best = 0;
  double best_value = f(a);
  const double step = (b - a) / (grid_points - 1);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(a + step * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = a + step * std::max(best - 1, 0);
  const double hi = a + step * std::min(best + 1, grid_points - 1);
  auto [x, fx] = golden_section_min(f, lo, hi, width);
  if (best_value < fx) return {a + step * best, best_value};
  return {x, fx};
}

}  // namespace upgrade::num
