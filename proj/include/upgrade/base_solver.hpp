#pragma once

#include "upgrade/instance.hpp"
#include "upgrade/policy.hpp"

namespace upgrade {

/// Cost of N equidistant upgrades: N * price + (N+1) * C(H / (N+1)).
double equidistant_cost(const Instance& instance, double price, int upgrades);

/// Cost of N upgrades spaced (H - t) / N apart with remaining lifetime t:
/// N * price + N * C((H - t) / N) + C(t).
double tail_cost(const Instance& instance, double price, int upgrades,
                 double remaining);

/// Convex cycle costs: scans the equidistant costs upward from N = 0 and
/// stops at the first non-improvement (valid since the equidistant cost is
/// convex in N), capped at upper_bound_upgrades.
SolveResult solve_convex(const Instance& instance, double price);

/// Concave cycle costs: never upgrade.
SolveResult solve_concave(const Instance& instance, double price);

/// S-shaped cycle costs with inflection x: compares never upgrading, the
/// equidistant scan started at ceil(H/x - 1), and for each feasible N the
/// best policy whose remaining lifetime t lies in (x, H) (1-D grid plus
/// golden-section refinement of N * price + N * C((H-t)/N) + C(t)).
SolveResult solve_s_shaped(const Instance& instance, double price);

/// Fallback for cycle costs that alternate between convex and concave:
/// multistart projected coordinate descent over the inter-upgrade times for
/// each N up to the upgrade bound. Best-effort; the result is flagged
/// heuristic.
SolveResult solve_general_numeric(const Instance& instance, double price);

/// Classifies the cycle-cost shape on [0, horizon] and dispatches to the
/// matching solver. With price = c0 this is the base case (cd = 0); with
/// price = c0 + cd it is the penalized base case used inside the general
/// dynamic program.
SolveResult solve_base(const Instance& instance, double price);

}  // namespace upgrade
