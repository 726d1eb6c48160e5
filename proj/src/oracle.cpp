#include "upgrade/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace upgrade {

namespace {

struct GridPoint {
  double age;
  long lattice;  // index on the uniform lattice, -1 when off-lattice
  bool overhaul;
};

}  // namespace

GridSpec default_grid(const Instance& instance) {
  return GridSpec{instance.horizon / 1000.0, true};
}

SolveResult oracle_solve(const Instance& instance, const GridSpec& grid) {
  instance.validate();
  if (!(grid.step > 0.0)) {
    throw std::invalid_argument("grid step must be positive");
  }
  const double horizon = instance.horizon;
  if (horizon / grid.step > 1e6) {
    throw std::invalid_argument("grid too fine: more than 1e6 points");
  }
  const CostModel& model = instance.model;
  const double match_tol = overhaul_match_tol(horizon);

  auto is_overhaul = [&](double t) {
    auto it = std::lower_bound(instance.overhauls.begin(),
                               instance.overhauls.end(), t);
    if (it != instance.overhauls.end() && std::abs(*it - t) <= match_tol)
      return true;
    return it != instance.overhauls.begin() &&
           std::abs(*(it - 1) - t) <= match_tol;
  };

  // Interior candidate upgrade ages.
  std::vector<GridPoint> points;
  const long steps = static_cast<long>(std::floor(horizon / grid.step));
  for (long i = 1; i <= steps; ++i) {
    const double t = i * grid.step;
    if (t >= horizon - match_tol) break;
    points.push_back({t, i, is_overhaul(t)});
  }
  if (grid.snap_overhauls) {
    for (double t : instance.overhauls) {
      points.push_back({t, -1, true});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const GridPoint& a, const GridPoint& b) { return a.age < b.age; });
  points.erase(std::unique(points.begin(), points.end(),
                           [&](const GridPoint& a, const GridPoint& b) {
                             return std::abs(a.age - b.age) <= match_tol;
                           }),
               points.end());
  if (instance.penalty.is_infinite()) {
    points.erase(std::remove_if(points.begin(), points.end(),
                                [](const GridPoint& p) { return !p.overhaul; }),
                 points.end());
  }

  // Cycle costs at lattice gaps, computed once.
  std::vector<double> lattice_cost(static_cast<std::size_t>(steps) + 1);
  for (long d = 0; d <= steps; ++d) {
    lattice_cost[static_cast<std::size_t>(d)] =
        model.cycle_cost(std::min(d * grid.step, horizon));
  }
  auto gap_cost = [&](const GridPoint& from, const GridPoint& to) {
    if (from.lattice >= 0 && to.lattice >= 0) {
      return lattice_cost[static_cast<std::size_t>(to.lattice - from.lattice)];
    }
    return model.cycle_cost(to.age - from.age);
  };

  const GridPoint origin{0.0, 0, false};
  const double penalty =
      instance.penalty.is_infinite() ? 0.0 : instance.penalty.value();
  const std::size_t count = points.size();
  std::vector<double> best(count, std::numeric_limits<double>::infinity());
  std::vector<long> parent(count, -1);
  for (std::size_t k = 0; k < count; ++k) {
    const double upgrade_charge =
        instance.price + (points[k].overhaul ? 0.0 : penalty);
    double value = gap_cost(origin, points[k]) + upgrade_charge;
    long arg = -1;
    for (std::size_t j = 0; j < k; ++j) {
      const double v = best[j] + gap_cost(points[j], points[k]) + upgrade_charge;
      if (v < value) {
        value = v;
        arg = static_cast<long>(j);
      }
    }
    best[k] = value;
    parent[k] = arg;
  }

  // Terminal: close the last cycle at the horizon.
  double optimum = model.cycle_cost(horizon);
  long last = -1;
  for (std::size_t k = 0; k < count; ++k) {
    const double tail =
        (points[k].lattice >= 0 && steps * grid.step == horizon)
            ? lattice_cost[static_cast<std::size_t>(steps - points[k].lattice)]
            : model.cycle_cost(horizon - points[k].age);
    const double v = best[k] + tail;
    if (v < optimum) {
      optimum = v;
      last = static_cast<long>(k);
    }
  }

  std::vector<double> times;
  for (long k = last; k >= 0; k = parent[static_cast<std::size_t>(k)]) {
    times.push_back(points[static_cast<std::size_t>(k)].age);
  }
  std::reverse(times.begin(), times.end());

  SolveResult result;
  result.policy = Policy(std::move(times));
  result.total_cost = total_cost(instance, result.policy);
  result.shape = classify_shape(model, horizon);
  result.candidates.push_back(
      {result.policy.upgrades(), result.policy.times(), result.total_cost});
  return result;
}

}  // namespace upgrade
