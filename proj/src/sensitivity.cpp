#include "upgrade/sensitivity.hpp"

#include <cmath>
#include <stdexcept>

#include "upgrade/overhaul_dp.hpp"
#include "upgrade/parallel.hpp"

namespace upgrade {

namespace {

constexpr double kBreakpointTol = 1e-6;

Instance with_penalty(const Instance& base, double cd) {
  Instance instance = base;
  instance.penalty = Penalty(cd);
  return instance;
}

Instance with_price(const Instance& base, double c0) {
  Instance instance = base;
  instance.price = c0;
  return instance;
}

template <typename MakeInstance>
std::vector<SweepSample> solve_samples(const std::vector<double>& values,
                                       const MakeInstance& make) {
  std::vector<SweepSample> samples(values.size());
  par::for_each_index(values.size(), [&](std::size_t i) {
    samples[i] = {values[i], solve_instance(make(values[i]))};
  });
  return samples;
}

// Bisects the parameter value where the returned policy stops matching
// `left` (policy identity is discrete, so this is unambiguous even when
// the cost curves are tangent).
template <typename MakeInstance>
double refine_breakpoint(double lo, const Policy& left, double hi,
                         double horizon, const MakeInstance& make) {
  while (hi - lo > kBreakpointTol) {
    const double mid = 0.5 * (lo + hi);
    const SolveResult result = solve_instance(make(mid));
    if (same_policy(result.policy, left, horizon)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <typename MakeInstance>
std::vector<double> detect_breakpoints(const std::vector<SweepSample>& samples,
                                       double horizon,
                                       const MakeInstance& make) {
  std::vector<double> breakpoints;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!same_policy(samples[i].result.policy, samples[i + 1].result.policy,
                     horizon)) {
      breakpoints.push_back(refine_breakpoint(samples[i].parameter,
                                              samples[i].result.policy,
                                              samples[i + 1].parameter, horizon,
                                              make));
    }
  }
  return breakpoints;
}

std::vector<double> linspace(double from, double to, int points) {
  std::vector<double> values(points);
  for (int i = 0; i < points; ++i) {
    values[i] = from + (to - from) * i / (points - 1);
  }
  return values;
}

}  // namespace

SweepResult sweep_penalty(const Instance& instance, double from, double to,
                          int points) {
  instance.validate();
  if (points < 2) throw std::invalid_argument("sweep requires >= 2 points");
  if (!(from >= 0.0) || !(to > from)) {
    throw std::invalid_argument("penalty range must satisfy 0 <= from < to");
  }
  auto make = [&](double cd) { return with_penalty(instance, cd); };
  SweepResult sweep;
  sweep.parameter = "cd";
  sweep.samples = solve_samples(linspace(from, to, points), make);

  // A fixed policy's cost is affine in cd with slope S; check it across
  // adjacent samples that returned the same policy.
  const double match_tol = overhaul_match_tol(instance.horizon);
  for (std::size_t i = 0; i + 1 < sweep.samples.size(); ++i) {
    const auto& a = sweep.samples[i];
    const auto& b = sweep.samples[i + 1];
    if (!same_policy(a.result.policy, b.result.policy, instance.horizon)) {
      continue;
    }
    const int s =
        a.result.policy.off_overhaul_count(instance.overhauls, match_tol);
    const double expected = s * (b.parameter - a.parameter);
    const double actual = b.result.total_cost - a.result.total_cost;
    if (std::abs(actual - expected) >
        1e-9 * (1.0 + std::abs(a.result.total_cost))) {
      throw std::logic_error(
          "penalty sweep: cost of a fixed policy is not affine with slope S");
    }
  }

  sweep.breakpoints = detect_breakpoints(sweep.samples, instance.horizon, make);
  return sweep;
}

SweepResult sweep_price(const Instance& instance, double from, double to,
                        int points) {
  instance.validate();
  if (points < 2) throw std::invalid_argument("sweep requires >= 2 points");
  const double v0 = instance.model.salvage_at_zero();
  if (!(from > v0) || !(to > from)) {
    throw std::invalid_argument(
        "price range must satisfy salvage(0) < from < to");
  }
  auto make = [&](double c0) { return with_price(instance, c0); };
  SweepResult sweep;
  sweep.parameter = "c0";
  sweep.samples = solve_samples(linspace(from, to, points), make);

  for (std::size_t i = 0; i + 1 < sweep.samples.size(); ++i) {
    if (sweep.samples[i + 1].result.policy.upgrades() >
        sweep.samples[i].result.policy.upgrades()) {
      throw std::logic_error(
          "price sweep: returned upgrade count increased with the price");
    }
  }

  sweep.breakpoints = detect_breakpoints(sweep.samples, instance.horizon, make);
  return sweep;
}

SweepResult sweep_overhaul_count(const Instance& instance,
                                 const std::vector<int>& m_values) {
  instance.validate();
  for (int m : m_values) {
    if (m < 0) throw std::invalid_argument("overhaul count must be >= 0");
  }
  SweepResult sweep;
  sweep.parameter = "m";
  sweep.samples.resize(m_values.size());
  par::for_each_index(m_values.size(), [&](std::size_t i) {
    const int m = m_values[i];
    Instance variant = instance;
    variant.overhauls.clear();
    for (int j = 1; j <= m; ++j) {
      variant.overhauls.push_back(instance.horizon * j / (m + 1));
    }
    sweep.samples[i] = {static_cast<double>(m), solve_instance(variant)};
  });
  return sweep;
}

LinearizedDominance linearized_dominance_check(const Instance& instance,
                                               double z) {
  instance.validate();
  if (!(z > 0.0 && z < instance.horizon)) {
    throw std::invalid_argument("linearization age must lie in (0, horizon)");
  }
  Instance alternate = instance;
  alternate.model = instance.model.linearized_beyond(z);

  LinearizedDominance outcome;
  outcome.alternate = solve_instance(alternate);
  outcome.applies = true;
  const double tol = 1e-9 * instance.horizon;
  for (double len : outcome.alternate.policy.cycle_lengths(instance.horizon)) {
    if (len > z + tol) {
      outcome.applies = false;
      break;
    }
  }
  return outcome;
}

}  // namespace upgrade
