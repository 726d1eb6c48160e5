#pragma once

#include <string>

#include "upgrade/instance.hpp"
#include "upgrade/policy.hpp"

namespace upgrade {

struct SweepSample {
  double parameter;
  SolveResult result;
};

/// A parametric sweep: solved samples in parameter order plus the refined
/// parameter values where the returned policy changes.
struct SweepResult {
  std::string parameter;
  std::vector<SweepSample> samples;
  std::vector<double> breakpoints;
};

/// Sweeps the off-overhaul penalty cd over [from, to] at `points` samples,
/// bisects each policy change to 1e-6, and verifies that the cost of a
/// fixed policy is affine in cd with slope S.
SweepResult sweep_penalty(const Instance& instance, double from, double to,
                          int points);

/// Sweeps the upgrade price c0 over [from, to] (which must stay above the
/// age-zero salvage value); additionally verifies that the returned number
/// of upgrades is non-increasing in the price.
SweepResult sweep_price(const Instance& instance, double from, double to,
                        int points);

/// Solves with m equidistant overhauls at i * H / (m+1) for each requested
/// m. No monotonicity holds (or is asserted) in m.
SweepResult sweep_overhaul_count(const Instance& instance,
                                 const std::vector<int>& m_values);

struct LinearizedDominance {
  /// True when every inter-upgrade time of the alternate optimum (the
  /// remaining lifetime included) is at most z; the alternate policy is
  /// then optimal for the original instance as well.
  bool applies;
  SolveResult alternate;
};

/// Solves the alternate instance whose cycle cost is linearized beyond z:
/// C~(t) = C(z) + (t - z) C'(z) for t >= z.
LinearizedDominance linearized_dominance_check(const Instance& instance,
                                               double z);

}  // namespace upgrade
