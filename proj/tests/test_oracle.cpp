#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_models.hpp"
#include "upgrade/base_solver.hpp"
#include "upgrade/oracle.hpp"
#include "upgrade/overhaul_dp.hpp"

using namespace upgrade;

TEST_CASE("oracle grid hits the uneven optimum exactly") {
  const Instance ne = fixtures::not_equidistant();
  auto r = oracle_solve(ne, GridSpec{0.1, true});
  REQUIRE(r.policy.upgrades() == 1);
  CHECK(r.policy.times()[0] == doctest::Approx(4.9).epsilon(1e-12));
  CHECK(r.total_cost == doctest::Approx(0.63).epsilon(1e-9));
}

TEST_CASE("oracle agrees with the convex solver when the optimum is on-grid") {
  const Instance a = fixtures::setting_a();
  auto r = oracle_solve(a, GridSpec{0.5, true});
  REQUIRE(r.policy.upgrades() == 1);
  CHECK(r.policy.times()[0] == 15.0);
  CHECK(r.total_cost == doctest::Approx(27.3081).epsilon(1e-4));
}

TEST_CASE("a grid as coarse as the horizon yields the empty policy") {
  const Instance a = fixtures::setting_a();
  auto r = oracle_solve(a, GridSpec{30.0, true});
  CHECK(r.policy.empty());
  CHECK(r.total_cost == a.model.cycle_cost(30.0));
}

TEST_CASE("oracle rejects absurd grids") {
  const Instance a = fixtures::setting_a();
  CHECK_THROWS_AS(oracle_solve(a, GridSpec{1e-7, true}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_solve(a, GridSpec{0.0, true}), std::invalid_argument);
}

TEST_CASE("grid policies never beat the exact solver") {
  std::vector<Instance> corpus = {
      fixtures::setting_a(),       fixtures::setting_b(),
      fixtures::not_equidistant(), fixtures::short_life_b(),
      fixtures::setting_b(4.0, Penalty(1.5), {10.0, 20.0}),
  };
  for (const Instance& instance : corpus) {
    auto exact = solve_instance(instance);
    auto grid = oracle_solve(instance, default_grid(instance));
    CHECK(exact.total_cost <= grid.total_cost + 1e-9);
  }
}

TEST_CASE("halving the grid step closes the gap monotonically") {
  const Instance b = fixtures::setting_b(4.0, Penalty(1.5), {10.0, 20.0});
  const double exact = solve_instance(b).total_cost;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double step : {0.4, 0.2, 0.1, 0.05}) {
    const double gap =
        oracle_solve(b, GridSpec{step, true}).total_cost - exact;
    CHECK(gap >= -1e-9);
    CHECK(gap <= prev_gap + 1e-9);
    prev_gap = gap;
  }
}

TEST_CASE("snapped infinite-penalty oracle equals the overhaul DP") {
  for (auto overhauls :
       {std::vector<double>{10.0, 20.0}, std::vector<double>{7.0, 13.0, 26.0},
        std::vector<double>{5.0, 10.0, 15.0, 20.0, 25.0}}) {
    Instance b = fixtures::setting_b(4.0, Penalty::infinite(), overhauls);
    auto dp = solve_overhaul_only(b);
    auto grid = oracle_solve(b, GridSpec{b.horizon / 512, true});
    CHECK(grid.total_cost == doctest::Approx(dp.total_cost).epsilon(1e-12));
    CHECK(grid.policy.times() == dp.policy.times());
  }
}
