#include "upgrade/base_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "upgrade/numeric.hpp"
#include "upgrade/parallel.hpp"

namespace upgrade {

namespace {

double tie_tol(double cost) { return 1e-9 * (1.0 + std::abs(cost)); }

Policy equidistant_policy(double horizon, int upgrades) {
  std::vector<double> times;
  times.reserve(upgrades);
  for (int i = 1; i <= upgrades; ++i) {
    times.push_back(horizon * i / (upgrades + 1));
  }
  return Policy(std::move(times));
}

// Accumulates candidates and keeps the preferred one under the
// deterministic tie-breaking.
struct Incumbent {
  const Instance& instance;
  std::vector<Candidate> trace;
  Policy best_policy;
  double best_cost = std::numeric_limits<double>::infinity();
  bool has_best = false;

  explicit Incumbent(const Instance& inst) : instance(inst) {}

  void offer(double cost, Policy policy) {
    trace.push_back({policy.upgrades(), policy.times(), cost});
    if (!has_best || prefer_candidate(cost, policy, best_cost, best_policy,
                                      instance.overhauls, instance.horizon)) {
      best_cost = cost;
      best_policy = std::move(policy);
      has_best = true;
    }
  }

  SolveResult finish(ShapeClass shape, bool heuristic = false) && {
    SolveResult result;
    result.policy = std::move(best_policy);
    result.total_cost = best_cost;
    result.shape = std::move(shape);
    result.candidates = std::move(trace);
    result.heuristic = heuristic;
    return result;
  }
};

// Equidistant scan of Algorithm 1: walk N upward from `start` while the
// cost strictly improves, never beyond `cap`.
void scan_equidistant(const Instance& instance, double price, int start,
                      int cap, Incumbent& incumbent) {
  if (start > cap) return;
  int n = start;
  double cost = equidistant_cost(instance, price, n);
  incumbent.offer(cost, equidistant_policy(instance.horizon, n));
  while (n < cap) {
    const double next = equidistant_cost(instance, price, n + 1);
    incumbent.offer(next, equidistant_policy(instance.horizon, n + 1));
    if (!(next < cost - tie_tol(cost))) break;
    ++n;
    cost = next;
  }
}

SolveResult solve_convex_impl(const Instance& instance, double price,
                              ShapeClass shape) {
  Incumbent incumbent(instance);
  scan_equidistant(instance, price, 0, upper_bound_upgrades(instance, price),
                   incumbent);
  return std::move(incumbent).finish(std::move(shape));
}

SolveResult solve_concave_impl(const Instance& instance, ShapeClass shape) {
  Incumbent incumbent(instance);
  incumbent.offer(instance.model.cycle_cost(instance.horizon), Policy());
  return std::move(incumbent).finish(std::move(shape));
}

SolveResult solve_s_shaped_impl(const Instance& instance, double price,
                                ShapeClass shape) {
  const double horizon = instance.horizon;
  const double x = shape.inflection;
  const int cap = upper_bound_upgrades(instance, price);

  Incumbent incumbent(instance);
  // Never upgrading is always a candidate.
  incumbent.offer(instance.model.cycle_cost(horizon), Policy());

  // Equidistant policies: the common inter-upgrade time must be <= x, so
  // the scan starts at ceil(H/x - 1), where the cost is convex in N.
  const int start =
      std::max(1, static_cast<int>(std::ceil(horizon / x - 1.0 - 1e-12)));
  scan_equidistant(instance, price, start, cap, incumbent);

  // Policies whose remaining lifetime t exceeds the common inter-upgrade
  // time: minimize the tail cost over t in [max{H/(N+1), x}, H] per N.
  struct TailCandidate {
    double remaining;
    double cost;
  };
  std::vector<std::optional<TailCandidate>> tails(
      static_cast<std::size_t>(std::max(cap, 0)));
  par::for_each_index(tails.size(), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) + 1;
    const double lo = std::max(horizon / (n + 1), x);
    if (lo >= horizon) return;
    auto objective = [&](double t) { return tail_cost(instance, price, n, t); };
    auto [t_star, cost] =
        num::grid_then_golden_min(objective, lo, horizon, 1024, 1e-10 * horizon);
    // Algorithm guard: only accept interior minimizers with t* in (x, H).
    const double edge = 1e-9 * horizon;
    if (t_star <= x + edge || t_star >= horizon - edge) return;
    tails[idx] = TailCandidate{t_star, cost};
  });
  for (std::size_t idx = 0; idx < tails.size(); ++idx) {
    if (!tails[idx]) continue;
    const int n = static_cast<int>(idx) + 1;
    const double step = (horizon - tails[idx]->remaining) / n;
    std::vector<double> times;
    times.reserve(n);
    for (int i = 1; i <= n; ++i) times.push_back(step * i);
    incumbent.offer(tails[idx]->cost, Policy(std::move(times)));
  }
  return std::move(incumbent).finish(std::move(shape));
}

// --- Numeric fallback for general shapes ---------------------------------

// One golden-section transfer move between a pair of cycle lengths:
// minimizes C(a + d) + C(b - d) over d in [-a, b].
bool pair_move(const CostModel& model, double& a, double& b, double horizon) {
  auto objective = [&](double d) {
    return model.cycle_cost(a + d) + model.cycle_cost(b - d);
  };
  const double before = objective(0.0);
  auto [d_star, value] =
      num::grid_then_golden_min(objective, -a, b, 33, 1e-12 * horizon);
  if (value < before - 1e-10) {
    a += d_star;
    b -= d_star;
    return true;
  }
  return false;
}

// Sets groups of cycle lengths with equal cost derivative to their common
// mean when that does not worsen the objective (property of optima on
// convex stretches).
void collapse_equal_derivatives(const CostModel& model,
                                std::vector<double>& lengths) {
  const int count = static_cast<int>(lengths.size());
  std::vector<bool> grouped(count, false);
  for (int i = 0; i < count; ++i) {
    if (grouped[i] || lengths[i] <= 0.0) continue;
    const double di = model.cycle_cost_derivative(lengths[i]);
    std::vector<int> group{i};
    for (int j = i + 1; j < count; ++j) {
      if (grouped[j] || lengths[j] <= 0.0) continue;
      const double dj = model.cycle_cost_derivative(lengths[j]);
      if (std::abs(di - dj) <= 1e-8 * (1.0 + std::abs(di))) {
        group.push_back(j);
      }
    }
    if (group.size() < 2) continue;
    double sum = 0.0;
    double before = 0.0;
    for (int j : group) {
      sum += lengths[j];
      before += model.cycle_cost(lengths[j]);
    }
    const double mean = sum / group.size();
    const double after = group.size() * model.cycle_cost(mean);
    if (after <= before + 1e-12) {
      for (int j : group) {
        lengths[j] = mean;
        grouped[j] = true;
      }
    }
  }
}

// Builds a policy from cycle lengths, dropping collapsed (near-zero)
// cycles, and returns the recomputed cost.
std::pair<Policy, double> policy_from_lengths(const Instance& instance,
                                              double price,
                                              std::vector<double> lengths) {
  const double tol = 1e-9 * instance.horizon;
  std::vector<double> times;
  double at = 0.0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    at += std::max(lengths[i], 0.0);
    if (at <= tol || at >= instance.horizon - tol) continue;
    if (!times.empty() && at - times.back() <= tol) continue;
    times.push_back(at);
  }
  Policy policy{std::move(times)};
  return {policy, base_cost(instance.model, instance.horizon, price, policy)};
}

SolveResult solve_general_numeric_impl(const Instance& instance, double price,
                                       ShapeClass shape) {
  const double horizon = instance.horizon;
  const CostModel& model = instance.model;
  const int cap = upper_bound_upgrades(instance, price);
  constexpr int kStarts = 32;
  constexpr int kMaxSweeps = 200;

  Incumbent incumbent(instance);
  incumbent.offer(model.cycle_cost(horizon), Policy());

  struct Best {
    double cost = std::numeric_limits<double>::infinity();
    Policy policy;
    bool found = false;
  };
  std::vector<Best> per_n(static_cast<std::size_t>(std::max(cap, 0)));

  par::for_each_index(per_n.size(), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) + 1;
    const int cycles = n + 1;
    Best best;
    for (int start = 0; start < kStarts; ++start) {
      std::vector<double> lengths(cycles, horizon / cycles);
      if (start == 1 && n >= 1) {
        // Half the horizon in the final cycle, the rest equidistant.
        for (int i = 0; i < n; ++i) lengths[i] = 0.5 * horizon / n;
        lengths[n] = 0.5 * horizon;
      } else if (start == 2 && n >= 1) {
        // Mirror image: the long cycle first.
        lengths[0] = 0.5 * horizon;
        for (int i = 1; i <= n; ++i) lengths[i] = 0.5 * horizon / n;
      } else if (start > 0) {
        // Dirichlet(1,...,1) draw via normalized exponentials.
        std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ (idx * 1031ull + start));
        std::uniform_real_distribution<double> unif(1e-12, 1.0);
        double sum = 0.0;
        for (double& len : lengths) {
          len = -std::log(unif(rng));
          sum += len;
        }
        for (double& len : lengths) len *= horizon / sum;
      }
      for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool improved = false;
        for (int i = 0; i < cycles; ++i) {
          for (int j = i + 1; j < cycles; ++j) {
            improved |= pair_move(model, lengths[i], lengths[j], horizon);
          }
        }
        if (!improved) break;
      }
      collapse_equal_derivatives(model, lengths);
      auto [policy, cost] = policy_from_lengths(instance, price, lengths);
      if (!best.found ||
          prefer_candidate(cost, policy, best.cost, best.policy,
                           instance.overhauls, instance.horizon)) {
        best.cost = cost;
        best.policy = std::move(policy);
        best.found = true;
      }
    }
    per_n[idx] = std::move(best);
  });

  for (auto& best : per_n) {
    if (best.found) incumbent.offer(best.cost, std::move(best.policy));
  }
  return std::move(incumbent).finish(std::move(shape), /*heuristic=*/true);
}

}  // namespace

double equidistant_cost(const Instance& instance, double price, int upgrades) {
  if (upgrades < 0) {
    throw std::invalid_argument("upgrade count must be non-negative");
  }
  const double cycle = instance.horizon / (upgrades + 1);
  return upgrades * price +
         (upgrades + 1) * instance.model.cycle_cost(cycle);
}

double tail_cost(const Instance& instance, double price, int upgrades,
                 double remaining) {
  if (upgrades < 1) {
    throw std::invalid_argument("tail cost requires at least one upgrade");
  }
  if (remaining < 0.0 || remaining > instance.horizon) {
    throw std::invalid_argument("remaining lifetime outside [0, horizon]");
  }
  const double cycle = (instance.horizon - remaining) / upgrades;
  return upgrades * price + upgrades * instance.model.cycle_cost(cycle) +
         instance.model.cycle_cost(remaining);
}

SolveResult solve_convex(const Instance& instance, double price) {
  ShapeClass shape;
  shape.tag = ShapeClass::Tag::Convex;
  return solve_convex_impl(instance, price, std::move(shape));
}

SolveResult solve_concave(const Instance& instance, double price) {
  (void)price;
  ShapeClass shape;
  shape.tag = ShapeClass::Tag::Concave;
  return solve_concave_impl(instance, std::move(shape));
}

SolveResult solve_s_shaped(const Instance& instance, double price) {
  ShapeClass shape = classify_shape(instance.model, instance.horizon);
  if (shape.tag != ShapeClass::Tag::SShaped) {
    throw std::invalid_argument("cycle cost is not S-shaped on this horizon");
  }
  return solve_s_shaped_impl(instance, price, std::move(shape));
}

SolveResult solve_general_numeric(const Instance& instance, double price) {
  ShapeClass shape = classify_shape(instance.model, instance.horizon);
  return solve_general_numeric_impl(instance, price, std::move(shape));
}

SolveResult solve_base(const Instance& instance, double price) {
  ShapeClass shape = classify_shape(instance.model, instance.horizon);
  switch (shape.tag) {
    case ShapeClass::Tag::Convex:
      return solve_convex_impl(instance, price, std::move(shape));
    case ShapeClass::Tag::Concave:
      return solve_concave_impl(instance, std::move(shape));
    case ShapeClass::Tag::SShaped:
      return solve_s_shaped_impl(instance, price, std::move(shape));
    case ShapeClass::Tag::General:
      return solve_general_numeric_impl(instance, price, std::move(shape));
  }
  throw std::logic_error("unreachable shape tag");
}

}  // namespace upgrade
