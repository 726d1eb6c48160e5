#include "upgrade/overhaul_dp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "upgrade/base_solver.hpp"
#include "upgrade/parallel.hpp"

namespace upgrade {

namespace {

// Overhaul ages extended with the endpoints: anchors[0] = 0,
// anchors[m+1] = H.
std::vector<double> anchor_ages(const Instance& instance) {
  std::vector<double> anchors;
  anchors.reserve(instance.overhauls.size() + 2);
  anchors.push_back(0.0);
  anchors.insert(anchors.end(), instance.overhauls.begin(),
                 instance.overhauls.end());
  anchors.push_back(instance.horizon);
  return anchors;
}

// Eq. (2) evaluated on the suffix [start, H] for a policy given in
// absolute ages. Off-overhaul upgrades accrue the penalty; with an
// infinite penalty they are forbidden by construction (S = 0).
double suffix_total(const Instance& instance, double start,
                    const std::vector<double>& absolute_times) {
  const double tol = overhaul_match_tol(instance.horizon);
  double cost = 0.0;
  double prev = start;
  int off_overhaul = 0;
  for (double t : absolute_times) {
    cost += instance.model.cycle_cost(t - prev) + instance.price;
    auto it = std::lower_bound(instance.overhauls.begin(),
                               instance.overhauls.end(), t);
    bool matched = (it != instance.overhauls.end() && std::abs(*it - t) <= tol);
    if (!matched && it != instance.overhauls.begin()) {
      matched = std::abs(*(it - 1) - t) <= tol;
    }
    if (!matched) ++off_overhaul;
    prev = t;
  }
  cost += instance.model.cycle_cost(instance.horizon - prev);
  if (off_overhaul > 0) cost += off_overhaul * instance.penalty.value();
  return cost;
}

Policy to_relative(const std::vector<double>& absolute_times, double start) {
  std::vector<double> rel;
  rel.reserve(absolute_times.size());
  for (double t : absolute_times) rel.push_back(t - start);
  return Policy(std::move(rel));
}

struct BranchChoice {
  double cost;
  std::vector<double> absolute_times;
};

// Keeps the preferred branch under the deterministic tie-breaking.
void consider(std::optional<BranchChoice>& best, double cost,
              std::vector<double> times, const Instance& instance) {
  if (!best ||
      prefer_candidate(cost, Policy(times), best->cost,
                       Policy(best->absolute_times), instance.overhauls,
                       instance.horizon)) {
    best = BranchChoice{cost, std::move(times)};
  }
}

}  // namespace

SolveResult solve_overhaul_only(const Instance& instance, DpTable* table) {
  instance.validate();
  const auto anchors = anchor_ages(instance);
  const int m = static_cast<int>(instance.overhauls.size());
  const CostModel& model = instance.model;

  // suffix[l-1] covers [anchors[l-1], H], l = 1..m+1.
  std::vector<BranchChoice> suffix(m + 1);
  std::vector<Candidate> top_candidates;
  for (int l = m + 1; l >= 1; --l) {
    const double start = anchors[l - 1];
    std::optional<BranchChoice> best;
    std::vector<std::vector<double>> branches;
    branches.emplace_back();  // never upgrade again on this suffix
    for (int j = l; j <= m; ++j) {
      // First upgrade of the suffix at overhaul j.
      std::vector<double> times{anchors[j]};
      const auto& rest = suffix[j].absolute_times;
      times.insert(times.end(), rest.begin(), rest.end());
      branches.push_back(std::move(times));
    }
    for (auto& times : branches) {
      const double cost = suffix_total(instance, start, times);
      if (l == 1) {
        top_candidates.push_back({static_cast<int>(times.size()), times, cost});
      }
      consider(best, cost, std::move(times), instance);
    }
    suffix[l - 1] = std::move(*best);
  }

  if (table) {
    table->suffix_cost.clear();
    table->suffix_policy.clear();
    for (int l = 1; l <= m + 1; ++l) {
      table->suffix_cost.push_back(suffix[l - 1].cost);
      table->suffix_policy.push_back(
          to_relative(suffix[l - 1].absolute_times, anchors[l - 1]));
    }
  }

  SolveResult result;
  result.policy = Policy(suffix[0].absolute_times);
  result.total_cost = suffix[0].cost;
  result.shape = classify_shape(model, instance.horizon);
  result.candidates = std::move(top_candidates);
  return result;
}

SolveResult solve_general(const Instance& instance, DpTable* table) {
  instance.validate();
  if (instance.penalty.is_infinite()) {
    throw std::invalid_argument(
        "solve_general requires a finite penalty; use solve_overhaul_only");
  }
  const double price = instance.price + instance.penalty.value();
  const auto anchors = anchor_ages(instance);
  const int m = static_cast<int>(instance.overhauls.size());

  // Pre-solve the penalized base case for every distinct segment length;
  // lengths repeat heavily for equidistant calendars. Cycle costs depend
  // only on age since the last upgrade, so a solve is reusable at any
  // segment offset.
  std::vector<double> lengths;
  for (int l = 1; l <= m + 1; ++l) {
    lengths.push_back(instance.horizon - anchors[l - 1]);
    for (int j = l; j <= m; ++j) {
      lengths.push_back(anchors[j] - anchors[l - 1]);
    }
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

  std::vector<SolveResult> segment_solutions(lengths.size());
  par::for_each_index(lengths.size(), [&](std::size_t i) {
    Instance segment{lengths[i], price, Penalty(0.0), {}, instance.model};
    segment_solutions[i] = solve_base(segment, price);
  });
  auto segment_for = [&](double length) -> const SolveResult& {
    const auto it = std::lower_bound(lengths.begin(), lengths.end(), length);
    return segment_solutions[static_cast<std::size_t>(it - lengths.begin())];
  };

  std::vector<BranchChoice> suffix(m + 1);
  std::vector<Candidate> top_candidates;
  for (int l = m + 1; l >= 1; --l) {
    const double start = anchors[l - 1];
    std::optional<BranchChoice> best;
    std::vector<std::pair<double, std::vector<double>>> branches;

    // No upgrade at any remaining overhaul: the suffix is one penalized
    // base case.
    {
      const SolveResult& seg = segment_for(instance.horizon - start);
      std::vector<double> times;
      for (double t : seg.policy.times()) times.push_back(start + t);
      branches.emplace_back(0.0, std::move(times));
    }
    // First overhaul-upgrade of the suffix at anchors[j].
    for (int j = l; j <= m; ++j) {
      const SolveResult& seg = segment_for(anchors[j] - start);
      std::vector<double> times;
      for (double t : seg.policy.times()) times.push_back(start + t);
      times.push_back(anchors[j]);
      const auto& rest = suffix[j].absolute_times;
      times.insert(times.end(), rest.begin(), rest.end());
      branches.emplace_back(0.0, std::move(times));
    }

    for (auto& [cost, times] : branches) {
      cost = suffix_total(instance, start, times);
      if (l == 1) {
        top_candidates.push_back({static_cast<int>(times.size()), times, cost});
      }
      consider(best, cost, std::move(times), instance);
    }
    suffix[l - 1] = std::move(*best);
  }

  if (table) {
    table->suffix_cost.clear();
    table->suffix_policy.clear();
    for (int l = 1; l <= m + 1; ++l) {
      table->suffix_cost.push_back(suffix[l - 1].cost);
      table->suffix_policy.push_back(
          to_relative(suffix[l - 1].absolute_times, anchors[l - 1]));
    }
  }

  SolveResult result;
  result.policy = Policy(suffix[0].absolute_times);
  result.total_cost = suffix[0].cost;
  result.shape = classify_shape(instance.model, instance.horizon);
  result.candidates = std::move(top_candidates);
  return result;
}

SolveResult solve_instance(const Instance& instance) {
  instance.validate();
  if (instance.penalty.is_infinite()) {
    return solve_overhaul_only(instance);
  }
  if (instance.penalty.value() == 0.0) {
    return solve_base(instance, instance.price);
  }
  return solve_general(instance);
}

}  // namespace upgrade
