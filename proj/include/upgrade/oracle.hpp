#pragma once

#include "upgrade/instance.hpp"
#include "upgrade/policy.hpp"

namespace upgrade {

/// Grid resolution for the brute-force oracle. snap_overhauls inserts the
/// overhaul ages as extra grid points so they are exactly representable.
struct GridSpec {
  double step;
  bool snap_overhauls = true;
};

/// Brute-force dynamic program over candidate upgrade ages restricted to a
/// uniform grid (plus snapped overhauls). Independent of the analytic
/// solvers: every grid policy is feasible, so the oracle cost is an upper
/// bound on the exact optimum. With an infinite penalty the candidate ages
/// are restricted to overhaul moments.
SolveResult oracle_solve(const Instance& instance, const GridSpec& grid);

/// Default resolution: horizon / 1000.
GridSpec default_grid(const Instance& instance);

}  // namespace upgrade
