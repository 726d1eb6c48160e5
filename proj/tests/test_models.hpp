#pragma once

// Shared model fixtures used across the test suites.

#include <vector>

#include "upgrade/instance.hpp"

namespace fixtures {

using upgrade::CostModel;
using upgrade::FunctionSpec;
using upgrade::Instance;
using upgrade::Penalty;

// C(t) = t/3 + (3/16)(t/3)^2 + 0.1 t^1.1 on [0, 30]; strictly convex.
inline CostModel setting_a_model() {
  return CostModel::from_cycle_cost(
      FunctionSpec::sum(
          {FunctionSpec::polynomial({0.0, 1.0 / 3.0, 3.0 / (16.0 * 9.0)}),
           FunctionSpec::power(0.1, 1.1)}),
      30.0);
}

// C(t) = t/3 + (3/16)(t/3)^3 + 0.1 t^1.1 on [0, 30]; strictly convex.
inline CostModel setting_b_model() {
  return CostModel::from_cycle_cost(
      FunctionSpec::sum({FunctionSpec::polynomial(
                             {0.0, 1.0 / 3.0, 0.0, 3.0 / (16.0 * 27.0)}),
                         FunctionSpec::power(0.1, 1.1)}),
      30.0);
}

inline Instance setting_a(double price = 4.0, Penalty penalty = Penalty(0.0),
                          std::vector<double> overhauls = {}) {
  return Instance{30.0, price, penalty, std::move(overhauls),
                  setting_a_model()};
}

inline Instance setting_b(double price = 4.0, Penalty penalty = Penalty(0.0),
                          std::vector<double> overhauls = {}) {
  return Instance{30.0, price, penalty, std::move(overhauls),
                  setting_b_model()};
}

// Flat cycle cost -0.15 up to 4.9, a steep quadratic bump across
// [4.9, 5], then linear growth at rate 0.15; S-shaped with inflection at
// 4.95. Direct piecewise-polynomial form.
inline CostModel not_equidistant_model() {
  return CostModel::from_cycle_cost(
      FunctionSpec::piecewise(
          {{0.0, 4.9, FunctionSpec::constant(-0.15)},
           {4.9, 4.95, FunctionSpec::polynomial({719.415, -293.85, 30.0})},
           {4.95, 5.0, FunctionSpec::polynomial({-750.735, 300.15, -30.0})},
           {5.0, 10.0, FunctionSpec::polynomial({-0.735, 0.15})}}),
      10.0);
}

// The same model in components form: piecewise salvage, a functionality
// gap that jumps to rate 0.15 at age 4.9, and no failures.
inline CostModel not_equidistant_components_model() {
  FunctionSpec salvage = FunctionSpec::piecewise(
      {{0.0, 4.9, FunctionSpec::constant(0.15)},
       {4.9, 4.95, FunctionSpec::polynomial({-720.15, 294.0, -30.0})},
       {4.95, 5.0, FunctionSpec::polynomial({750.0, -300.0, 30.0})},
       {5.0, 10.0, FunctionSpec::constant(0.0)}});
  FunctionSpec gap =
      FunctionSpec::piecewise({{0.0, 4.9, FunctionSpec::constant(0.0)},
                               {4.9, 10.0, FunctionSpec::constant(0.15)}});
  return CostModel::from_components(
      {std::move(salvage), std::move(gap), FunctionSpec::constant(0.0),
       FunctionSpec::constant(0.0)},
      10.0);
}

inline Instance not_equidistant(double price = 0.75,
                                Penalty penalty = Penalty(0.0),
                                std::vector<double> overhauls = {}) {
  return Instance{10.0, price, penalty, std::move(overhauls),
                  not_equidistant_model()};
}

// C(t) = 1/(1 + exp(-(t - 10))) - 1 on [0, 30]: S-shaped salvage-only
// model with inflection at 10 and C in (-1, 0).
inline CostModel logistic_salvage_model() {
  return CostModel::from_cycle_cost(
      FunctionSpec::sum({FunctionSpec::logistic(1.0, 1.0, 10.0),
                         FunctionSpec::constant(-1.0)}),
      30.0);
}

// C(t) = 1/(1 + exp(-(t + 10))) - 1 on [0, 30]: concave on the whole
// horizon (the sigmoid midpoint lies left of 0).
inline CostModel logistic_concave_model() {
  return CostModel::from_cycle_cost(
      FunctionSpec::sum({FunctionSpec::logistic(1.0, 1.0, -10.0),
                         FunctionSpec::constant(-1.0)}),
      30.0);
}

// C_A(t) = t + t^2/10 and C_B(t) = (2/3) t^{3/2} on [0, 0.5].
inline Instance short_life_a(double price = 0.02) {
  return Instance{0.5, price, Penalty(0.0), {},
                  CostModel::from_cycle_cost(
                      FunctionSpec::polynomial({0.0, 1.0, 0.1}), 0.5)};
}

inline Instance short_life_b(double price = 0.02) {
  return Instance{0.5, price, Penalty(0.0), {},
                  CostModel::from_cycle_cost(
                      FunctionSpec::power(2.0 / 3.0, 1.5), 0.5)};
}

}  // namespace fixtures
