#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_models.hpp"
#include "upgrade/base_solver.hpp"

using namespace upgrade;

namespace {

// Independent enumeration of the equidistant candidates (used to derive
// expected optima without going through the solver's scan logic).
int argmin_equidistant(const Instance& instance, double price, int max_n) {
  int best = 0;
  double best_cost = equidistant_cost(instance, price, 0);
  for (int n = 1; n <= max_n; ++n) {
    const double c = equidistant_cost(instance, price, n);
    if (c < best_cost) {
      best_cost = c;
      best = n;
    }
  }
  return best;
}

void check_objective_consistency(const Instance& instance, double price,
                                 const SolveResult& result) {
  const double recomputed =
      base_cost(instance.model, instance.horizon, price, result.policy);
  CHECK(result.total_cost ==
        doctest::Approx(recomputed).epsilon(1e-9));
  for (const auto& candidate : result.candidates) {
    CHECK(result.total_cost <= candidate.cost + 1e-9 * (1.0 + std::abs(candidate.cost)));
  }
}

void check_stationarity(const Instance& instance, const SolveResult& result) {
  if (result.policy.empty()) return;
  const auto lengths = result.policy.cycle_lengths(instance.horizon);
  const auto& model = instance.model;
  const double tail = model.cycle_cost_derivative(lengths.back());
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    const double right = model.cycle_cost_derivative(lengths[i]);
    const double left = model.cycle_cost_derivative(lengths[i], Side::Left);
    if (std::abs(right - left) > 1e-9 * (1.0 + std::abs(right))) {
      MESSAGE("stationarity: kink at inter-upgrade time ", lengths[i],
              " exempted");
      continue;
    }
    CHECK(std::abs(right - tail) <= 1e-6 * (1.0 + std::abs(tail)));
  }
}

}  // namespace

TEST_CASE("upgrade count upper bound") {
  // (C(10)+v(0)) / (c0-v(0)) = (0.765+0.15) / 0.6 = 1.525 -> 1.
  CHECK(upper_bound_upgrades(fixtures::not_equidistant()) == 1);

  // Setting A: direct evaluation of the bound formula.
  const Instance a = fixtures::setting_a();
  const double v0 = a.model.salvage_at_zero();
  const int expected = static_cast<int>(
      std::floor((a.model.cycle_cost(30.0) + v0) / (a.price - v0)));
  CHECK(v0 == 0.0);
  CHECK(expected == 8);
  CHECK(upper_bound_upgrades(a) == 8);

  // C(H) = -v(0): the numerator vanishes.
  Instance flat{10.0, 1.0, Penalty(0.0), {},
                CostModel::from_cycle_cost(FunctionSpec::constant(-0.15), 10.0)};
  CHECK(upper_bound_upgrades(flat) == 0);
}

TEST_CASE("equidistant cost fixtures") {
  const Instance a = fixtures::setting_a();
  const Instance b = fixtures::setting_b();

  CHECK(equidistant_cost(b, 4.0, 4) == doctest::Approx(37.0887).epsilon(1e-4));
  CHECK(equidistant_cost(a, 4.0, 0) == a.model.cycle_cost(30.0));
  CHECK(equidistant_cost(fixtures::short_life_b(), 0.02, 2) ==
        doctest::Approx(0.1761).epsilon(1e-3));
  CHECK_THROWS_AS(equidistant_cost(a, 4.0, -1), std::invalid_argument);
}

TEST_CASE("tail cost fixtures") {
  const Instance ne = fixtures::not_equidistant();
  CHECK(tail_cost(ne, 0.75, 1, 5.1) == doctest::Approx(0.63).epsilon(1e-9));
  CHECK(tail_cost(ne, 0.75, 1, 5.0) == doctest::Approx(0.78).epsilon(1e-9));

  // At t = H/(N+1) the two cost expressions coincide.
  const Instance a = fixtures::setting_a();
  CHECK(tail_cost(a, 4.0, 3, 30.0 / 4.0) ==
        doctest::Approx(equidistant_cost(a, 4.0, 3)).epsilon(1e-12));
  CHECK_THROWS_AS(tail_cost(a, 4.0, 0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_cost(a, 4.0, 1, 31.0), std::invalid_argument);
}

TEST_CASE("convex solver reproduces both settings") {
  const Instance a = fixtures::setting_a();
  auto ra = solve_convex(a, 4.0);
  CHECK(ra.policy.upgrades() == 1);
  REQUIRE(ra.policy.times().size() == 1);
  CHECK(ra.policy.times()[0] == doctest::Approx(15.0));
  CHECK(ra.total_cost == doctest::Approx(27.3081).epsilon(1e-4));
  check_objective_consistency(a, 4.0, ra);
  check_stationarity(a, ra);

  const Instance b = fixtures::setting_b();
  auto rb = solve_convex(b, 4.0);
  CHECK(rb.policy.upgrades() == 4);
  CHECK(rb.policy.times() ==
        std::vector<double>{6.0, 12.0, 18.0, 24.0});
  CHECK(rb.total_cost == doctest::Approx(37.0887).epsilon(1e-4));
  check_objective_consistency(b, 4.0, rb);
}

TEST_CASE("convex solver at a prohibitive price never upgrades") {
  Instance a = fixtures::setting_a(100.0);
  // Derived expectation: enumerate the equidistant costs directly.
  CHECK(argmin_equidistant(a, 100.0, 8) == 0);
  auto result = solve_convex(a, 100.0);
  CHECK(result.policy.empty());
  CHECK(result.total_cost == doctest::Approx(32.9653).epsilon(1e-4));
}

TEST_CASE("equidistant cost is convex in N on convex instances") {
  for (const Instance& instance :
       {fixtures::setting_a(), fixtures::setting_b(), fixtures::short_life_a(),
        fixtures::short_life_b()}) {
    const int cap = upper_bound_upgrades(instance);
    for (int n = 1; n < cap; ++n) {
      const double second = equidistant_cost(instance, instance.price, n + 1) -
                            2.0 * equidistant_cost(instance, instance.price, n) +
                            equidistant_cost(instance, instance.price, n - 1);
      CHECK(second >= -1e-9);
    }
  }
}

TEST_CASE("concave solver never upgrades") {
  Instance flat{10.0, 1.0, Penalty(0.0), {},
                CostModel::from_cycle_cost(FunctionSpec::constant(-0.15), 10.0)};
  auto r = solve_concave(flat, 1.0);
  CHECK(r.policy.empty());
  CHECK(r.total_cost == -0.15);

  Instance root{10.0, 0.5, Penalty(0.0), {},
                CostModel::from_cycle_cost(FunctionSpec::power(1.0, 0.5), 10.0)};
  auto rr = solve_concave(root, 0.5);
  CHECK(rr.policy.empty());
  CHECK(rr.total_cost == doctest::Approx(std::sqrt(10.0)));

  // Convex salvage with constant cf + k*h: concave cycle costs, routed by
  // the dispatcher.
  Instance comp{30.0, 2.0, Penalty(0.0), {},
                CostModel::from_components({FunctionSpec::logistic(1.0, -1.0, 0.0),
                                            FunctionSpec::constant(0.0),
                                            FunctionSpec::constant(0.3),
                                            FunctionSpec::constant(0.5)},
                                           30.0)};
  auto rc = solve_base(comp, 2.0);
  CHECK(rc.shape.tag == ShapeClass::Tag::Concave);
  CHECK(rc.policy.empty());
}

TEST_CASE("s-shaped solver finds the uneven optimum") {
  const Instance ne = fixtures::not_equidistant();
  auto r = solve_s_shaped(ne, 0.75);
  REQUIRE(r.policy.upgrades() == 1);
  CHECK(r.policy.times()[0] == doctest::Approx(4.9).epsilon(1e-9));
  CHECK(r.total_cost == doctest::Approx(0.63).epsilon(1e-9));
  CHECK(r.shape.inflection == doctest::Approx(4.95));
  check_objective_consistency(ne, 0.75, r);
  check_stationarity(ne, r);

  // The rejected alternatives from the candidate classes.
  CHECK(ne.model.cycle_cost(10.0) == doctest::Approx(0.765).epsilon(1e-9));
  CHECK(tail_cost(ne, 0.75, 1, 5.0) == doctest::Approx(0.78).epsilon(1e-9));
}

TEST_CASE("s-shaped churner prefers many cheap upgrades") {
  // Logistic salvage with a barely-profitable price: the equidistant scan
  // dominates. Independent derivation: the equidistant cost is
  // N + (N+1) * C(30/(N+1)), minimized at N = 29.
  Instance churn{30.0, 1.0, Penalty(0.0), {},
                 fixtures::logistic_salvage_model()};
  int best_n = argmin_equidistant(churn, 1.0, 200);
  CHECK(best_n == 29);
  auto r = solve_base(churn, 1.0);
  CHECK(r.shape.tag == ShapeClass::Tag::SShaped);
  CHECK(r.policy.upgrades() == 29);
  CHECK(r.total_cost ==
        doctest::Approx(equidistant_cost(churn, 1.0, 29)).epsilon(1e-12));
  CHECK(r.total_cost < churn.model.cycle_cost(30.0));
  CHECK(upper_bound_upgrades(churn) >= 29);
}

TEST_CASE("s-shaped policies have the proposition structure") {
  std::vector<Instance> corpus = {
      fixtures::not_equidistant(),
      Instance{30.0, 1.0, Penalty(0.0), {}, fixtures::logistic_salvage_model()},
      Instance{12.0, 0.4, Penalty(0.0), {},
               CostModel::from_cycle_cost(FunctionSpec::logistic(2.0, 0.7, 4.0),
                                          12.0)},
  };
  for (const Instance& instance : corpus) {
    auto shape = classify_shape(instance.model, instance.horizon);
    REQUIRE(shape.tag == ShapeClass::Tag::SShaped);
    auto r = solve_s_shaped(instance, instance.price);
    if (r.policy.empty()) continue;
    const auto lengths = r.policy.cycle_lengths(instance.horizon);
    const double first = lengths.front();
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
      CHECK(std::abs(lengths[i] - first) <= 1e-8 * instance.horizon);
    }
    const double tail = lengths.back();
    const bool equidistant = std::abs(tail - first) <= 1e-8 * instance.horizon;
    const bool split = first <= shape.inflection + 1e-8 &&
                       shape.inflection < tail;
    CHECK((equidistant || split));
  }
}

TEST_CASE("s-shaped instance beyond the price corollary never upgrades") {
  // c0 - 2 v(0) >= C(H) makes upgrades pointless.
  const double price = 0.765 + 2 * 0.15 + 0.01;
  const Instance ne = fixtures::not_equidistant(price);
  auto r = solve_s_shaped(ne, price);
  CHECK(r.policy.empty());
  CHECK(r.total_cost == doctest::Approx(0.765).epsilon(1e-9));
}

TEST_CASE("s-shaped entry point rejects other shapes") {
  CHECK_THROWS_AS(solve_s_shaped(fixtures::setting_a(), 4.0),
                  std::invalid_argument);
}

TEST_CASE("numeric fallback matches the structural solvers") {
  const Instance a = fixtures::setting_a();
  auto exact = solve_convex(a, 4.0);
  auto numeric = solve_general_numeric(a, 4.0);
  CHECK(numeric.heuristic);
  CHECK(numeric.total_cost == doctest::Approx(exact.total_cost).epsilon(1e-6));
  REQUIRE(numeric.policy.upgrades() == 1);
  CHECK(numeric.policy.times()[0] == doctest::Approx(15.0).epsilon(1e-6));

  Instance root{10.0, 0.5, Penalty(0.0), {},
                CostModel::from_cycle_cost(FunctionSpec::power(1.0, 0.5), 10.0)};
  CHECK(solve_general_numeric(root, 0.5).policy.empty());

  const Instance ne = fixtures::not_equidistant();
  auto fallback = solve_general_numeric(ne, 0.75);
  CHECK(fallback.total_cost == doctest::Approx(0.63).epsilon(1e-6));
}

TEST_CASE("dispatcher handles the penalized price of the general DP") {
  // Setting B on a 20-year horizon at price c0 + cd = 5.5: two upgrades
  // at thirds (the inner solve of the three-segment fixture).
  Instance b20{20.0, 5.5, Penalty(0.0), {}, fixtures::setting_b_model()};
  auto r = solve_base(b20, 5.5);
  CHECK(r.policy.upgrades() == 2);
  CHECK(r.total_cost == doctest::Approx(26.2574).epsilon(1e-4));
  REQUIRE(r.policy.times().size() == 2);
  CHECK(r.policy.times()[0] == doctest::Approx(20.0 / 3.0).epsilon(1e-9));
  CHECK(r.policy.times()[1] == doctest::Approx(40.0 / 3.0).epsilon(1e-9));

  CHECK(solve_base(fixtures::setting_b(), 4.0).total_cost ==
        doctest::Approx(37.0887).epsilon(1e-4));
}

TEST_CASE("returned policies never exceed the upgrade bound") {
  std::vector<Instance> corpus = {
      fixtures::setting_a(),       fixtures::setting_b(),
      fixtures::not_equidistant(), fixtures::short_life_a(),
      fixtures::short_life_b(),
      Instance{30.0, 1.0, Penalty(0.0), {}, fixtures::logistic_salvage_model()},
  };
  for (const Instance& instance : corpus) {
    auto r = solve_base(instance, instance.price);
    CHECK(r.policy.upgrades() <= upper_bound_upgrades(instance));
    check_objective_consistency(instance, instance.price, r);
    check_stationarity(instance, r);
  }
}
