#pragma once

#include <span>
#include <vector>

#include "upgrade/cost_model.hpp"
#include "upgrade/instance.hpp"

namespace upgrade {

/// An upgrade policy: sorted upgrade ages strictly inside (0, horizon).
/// The inter-upgrade times T_1..T_{N+1} (the last one is the remaining
/// lifetime after the final upgrade) are derived against a horizon.
class Policy {
 public:
  Policy() = default;
  explicit Policy(std::vector<double> times);

  int upgrades() const { return static_cast<int>(times_.size()); }  // N
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }

  /// T_1..T_{N+1}; sums to horizon exactly by construction.
  std::vector<double> cycle_lengths(double horizon) const;

  /// S: upgrades not matching any overhaul time within tol.
  int off_overhaul_count(std::span<const double> overhauls, double tol) const;

  bool operator==(const Policy&) const = default;

 private:
  std::vector<double> times_;
};

/// Matching tolerance for "this upgrade coincides with an overhaul".
inline double overhaul_match_tol(double horizon) { return 1e-9 * horizon; }

/// Base-case objective: N * price + sum_i C(T_i).
double base_cost(const CostModel& model, double horizon, double price,
                 const Policy& policy);

/// Full objective: S * cd + N * c0 + sum_i C(T_i). Infinite penalty with
/// S > 0 yields +infinity.
double total_cost(const Instance& instance, const Policy& policy);

struct Candidate {
  int upgrades;
  std::vector<double> times;
  double cost;
};

struct SolveResult {
  Policy policy;
  double total_cost = 0.0;
  ShapeClass shape;
  std::vector<Candidate> candidates;
  bool heuristic = false;
};

/// Deterministic tie-breaking: costs within 1e-9 * (1 + |cost|) are ties,
/// resolved by fewer upgrades, then fewer off-overhaul upgrades, then
/// lexicographically later upgrade times (deferring tied upgrades).
/// Returns true when candidate a should be preferred over b.
bool prefer_candidate(double cost_a, const Policy& a, double cost_b,
                      const Policy& b, std::span<const double> overhauls,
                      double horizon);

/// True when the two policies coincide within the overhaul-matching
/// tolerance (used for sweep breakpoint detection).
bool same_policy(const Policy& a, const Policy& b, double horizon);

}  // namespace upgrade
