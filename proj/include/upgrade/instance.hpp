#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "upgrade/cost_model.hpp"

namespace upgrade {

/// Penalty for upgrading outside an overhaul. Infinite is a distinguished
/// value (never a large float): it routes the solver to the
/// overhauls-only dynamic program.
class Penalty {
 public:
  explicit Penalty(double value) : value_(value) {
    if (!(value >= 0.0)) {
      throw std::invalid_argument("penalty must be non-negative");
    }
  }
  static Penalty infinite() { return Penalty(); }

  bool is_infinite() const { return !value_.has_value(); }
  double value() const {
    if (!value_) throw std::logic_error("penalty is infinite");
    return *value_;
  }

  bool operator==(const Penalty&) const = default;

 private:
  Penalty() = default;
  std::optional<double> value_;
};

/// A problem instance: lifetime, upgrade price, off-overhaul penalty, the
/// fixed overhaul calendar (absolute ages, strictly inside (0, horizon)),
/// and the cycle-cost model.
struct Instance {
  double horizon;
  double price;  // c0, the purchase-and-install price of an upgrade
  Penalty penalty;
  std::vector<double> overhauls;
  CostModel model;

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;
};

/// Floor of (C(H) + v(0)) / (c0 - v(0)), clamped below at zero: no optimal
/// policy upgrades more often than this.
int upper_bound_upgrades(const Instance& instance);

/// Same bound with an explicit per-upgrade price (the penalized base case
/// inside the general dynamic program pays c0 + cd per upgrade).
int upper_bound_upgrades(const Instance& instance, double price);

}  // namespace upgrade
