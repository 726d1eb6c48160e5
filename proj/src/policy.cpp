#include "upgrade/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace upgrade {

Policy::Policy(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0.0) || !std::isfinite(times_[i])) {
      throw std::invalid_argument("upgrade times must be positive and finite");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("upgrade times must be strictly increasing");
    }
  }
}

std::vector<double> Policy::cycle_lengths(double horizon) const {
  std::vector<double> lengths;
  lengths.reserve(times_.size() + 1);
  double prev = 0.0;
  for (double t : times_) {
    lengths.push_back(t - prev);
    prev = t;
  }
  lengths.push_back(horizon - prev);
  return lengths;
}

int Policy::off_overhaul_count(std::span<const double> overhauls,
                               double tol) const {
  int count = 0;
  for (double t : times_) {
    auto it = std::lower_bound(overhauls.begin(), overhauls.end(), t);
    bool matched = false;
    if (it != overhauls.end() && std::abs(*it - t) <= tol) matched = true;
    if (it != overhauls.begin() && std::abs(*(it - 1) - t) <= tol)
      matched = true;
    if (!matched) ++count;
  }
  return count;
}

double base_cost(const CostModel& model, double horizon, double price,
                 const Policy& policy) {
  double cost = policy.upgrades() * price;
  for (double len : policy.cycle_lengths(horizon)) {
    cost += model.cycle_cost(len);
  }
  return cost;
}

double total_cost(const Instance& instance, const Policy& policy) {
  const int s = policy.off_overhaul_count(instance.overhauls,
                                          overhaul_match_tol(instance.horizon));
  double cost = policy.upgrades() * instance.price;
  for (double len : policy.cycle_lengths(instance.horizon)) {
    cost += instance.model.cycle_cost(len);
  }
  if (s > 0) {
    if (instance.penalty.is_infinite()) {
      return std::numeric_limits<double>::infinity();
    }
    cost += s * instance.penalty.value();
  }
  return cost;
}

bool prefer_candidate(double cost_a, const Policy& a, double cost_b,
                      const Policy& b, std::span<const double> overhauls,
                      double horizon) {
  const double tol = 1e-9 * (1.0 + std::min(std::abs(cost_a), std::abs(cost_b)));
  if (cost_a < cost_b - tol) return true;
  if (cost_b < cost_a - tol) return false;
  if (a.upgrades() != b.upgrades()) return a.upgrades() < b.upgrades();
  const double match_tol = overhaul_match_tol(horizon);
  const int sa = a.off_overhaul_count(overhauls, match_tol);
  const int sb = b.off_overhaul_count(overhauls, match_tol);
  if (sa != sb) return sa < sb;
  // Ties broken towards lexicographically later times: when a policy and
  // its mirror image cost the same, the one that defers its off-overhaul
  // upgrades wins.
  return std::lexicographical_compare(b.times().begin(), b.times().end(),
                                      a.times().begin(), a.times().end());
}

bool same_policy(const Policy& a, const Policy& b, double horizon) {
  if (a.upgrades() != b.upgrades()) return false;
  const double tol = overhaul_match_tol(horizon);
  for (int i = 0; i < a.upgrades(); ++i) {
    if (std::abs(a.times()[i] - b.times()[i]) > tol) return false;
  }
  return true;
}

}  // namespace upgrade
