#include "upgrade/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace upgrade {

void Instance::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon: must be a positive finite number");
  }
  if (horizon > model.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "horizon: exceeds the domain of the cost model");
  }
  const double v0 = model.salvage_at_zero();
  if (!(price > v0)) {
    throw std::invalid_argument(
        "price: must be strictly greater than the salvage value at age zero "
        "(price " +
        std::to_string(price) + ", salvage(0) " + std::to_string(v0) + ")");
  }
  for (std::size_t i = 0; i < overhauls.size(); ++i) {
    if (!(overhauls[i] > 0.0) || !(overhauls[i] < horizon)) {
      throw std::invalid_argument(
          "overhauls: time " + std::to_string(overhauls[i]) +
          " must lie strictly inside (0, horizon)");
    }
    if (i > 0 && !(overhauls[i] > overhauls[i - 1])) {
      throw std::invalid_argument(
          "overhauls: times must be strictly increasing");
    }
  }
}

int upper_bound_upgrades(const Instance& instance) {
  return upper_bound_upgrades(instance, instance.price);
}

int upper_bound_upgrades(const Instance& instance, double price) {
  const double v0 = instance.model.salvage_at_zero();
  if (!(price > v0)) {
    throw std::invalid_argument(
        "price: must be strictly greater than the salvage value at age zero");
  }
  const double numerator = instance.model.cycle_cost(instance.horizon) + v0;
  const double bound = numerator / (price - v0);
  if (!(bound > 0.0)) return 0;
  return static_cast<int>(std::floor(std::min(bound, 2.0e9)));
}

}  // namespace upgrade
