// Compares the serial reference path with the OpenMP path on the
// data-parallel workloads: sweep sampling and the per-N candidate search
// of the S-shaped solver. Both paths produce identical results; this
// target only reports wall time.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "upgrade/base_solver.hpp"
#include "upgrade/overhaul_dp.hpp"
#include "upgrade/parallel.hpp"
#include "upgrade/sensitivity.hpp"

namespace {

using namespace upgrade;
using Clock = std::chrono::steady_clock;

Instance table1_setting_b(double penalty) {
  FunctionSpec cycle = FunctionSpec::sum(
      {FunctionSpec::polynomial({0.0, 1.0 / 3.0, 0.0, 3.0 / (16.0 * 27.0)}),
       FunctionSpec::power(0.1, 1.1)});
  return Instance{30.0, 4.0, Penalty(penalty), {10.0, 20.0},
                  CostModel::from_cycle_cost(std::move(cycle), 30.0)};
}

Instance slow_churn_logistic() {
  // Near-unit salvage keeps the upgrade bound in the tens of thousands,
  // which makes the per-N tail search a heavy parallel workload.
  FunctionSpec cycle = FunctionSpec::sum(
      {FunctionSpec::logistic(1.0, 1.0, 10.0), FunctionSpec::constant(-1.0)});
  return Instance{30.0, 1.0, Penalty(0.0), {},
                  CostModel::from_cycle_cost(std::move(cycle), 30.0)};
}

template <typename Work>
double time_ms(par::Mode mode, const Work& work) {
  par::mode() = mode;
  const auto start = Clock::now();
  work();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

template <typename Work>
void report(const char* label, const Work& work) {
  const double serial = time_ms(par::Mode::Serial, work);
  const double parallel = time_ms(par::Mode::OpenMp, work);
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", label, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("%-34s %13s %13s %9s\n", "workload", "serial", "openmp",
              "speedup");

  const Instance sweep_instance = table1_setting_b(1.0);
  report("penalty sweep, 160 samples", [&] {
    (void)sweep_penalty(sweep_instance, 0.0, 2.5, 160);
  });
  report("price sweep, 96 samples", [&] {
    Instance inst = table1_setting_b(5.0);
    (void)sweep_price(inst, 1.0, 150.0, 96);
  });

  const Instance churn = slow_churn_logistic();
  report("s-shaped tail search, N-bound 22k", [&] {
    (void)solve_base(churn, churn.price);
  });

  par::mode() = par::Mode::OpenMp;
  return 0;
}
