#pragma once

#include "upgrade/instance.hpp"
#include "upgrade/policy.hpp"

namespace upgrade {

/// Backward dynamic-programming table over overhaul indices. Entry l
/// (1-based, l = 1..m+1) covers the suffix horizon starting at overhaul
/// l-1 (entry 1 covers the full lifetime). Suffix policies carry upgrade
/// times relative to the suffix start.
struct DpTable {
  std::vector<double> suffix_cost;
  std::vector<Policy> suffix_policy;
};

/// Upgrades restricted to overhaul moments (the infinite-penalty extreme):
/// backward DP over the overhaul indices. The instance penalty is ignored.
SolveResult solve_overhaul_only(const Instance& instance,
                                DpTable* table = nullptr);

/// General finite-penalty case: conditions on the first upgrade executed
/// at an overhaul; each segment between consecutive overhaul-upgrades is a
/// penalized base case with price c0 + cd.
SolveResult solve_general(const Instance& instance, DpTable* table = nullptr);

/// Routes by penalty: zero -> base case, finite -> solve_general,
/// infinite -> solve_overhaul_only.
SolveResult solve_instance(const Instance& instance);

}  // namespace upgrade
