#pragma once

#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "upgrade/function_spec.hpp"

namespace upgrade {

/// Curvature classification of a cycle-cost function over the model domain.
struct ShapeClass {
  enum class Tag { Convex, Concave, SShaped, General };

  struct Piece {
    double from;
    double to;
    bool convex;
  };

  Tag tag = Tag::General;
  /// Inflection age; set for SShaped only. Chosen as the supremum of any
  /// linear plateau so that C(x+d) - C(x) < C'(x) * d for all d > 0.
  double inflection = std::numeric_limits<double>::quiet_NaN();
  /// Alternating convex/concave intervals tiling the domain; General only.
  std::vector<Piece> pieces;
};

/// Cycle-cost model: either the component functions (salvage value,
/// functionality-gap penalty rate, expected repair cost, failure rate) or a
/// direct cycle-cost function. Components aggregate as
///   C(T) = -v(T) + integral_0^T cf + integral_0^T k*h.
class CostModel {
 public:
  struct Components {
    FunctionSpec salvage;
    FunctionSpec functionality_gap;
    FunctionSpec repair_cost;
    FunctionSpec failure_rate;
  };

  /// Validates the monotonicity assumptions by sampling: cf(0) = 0; cf, k,
  /// h non-decreasing; v non-increasing. Throws std::invalid_argument
  /// naming the offending function.
  static CostModel from_components(Components components, double horizon,
                                   int validation_samples = 2048);

  /// Direct form. Only finiteness on [0, horizon] is required; the cycle
  /// cost may be negative or non-monotone.
  static CostModel from_cycle_cost(FunctionSpec cycle_cost, double horizon,
                                   int validation_samples = 2048);

  double horizon() const { return horizon_; }
  int validation_samples() const { return validation_samples_; }

  bool has_components() const;
  const Components& components() const;
  const FunctionSpec& cycle_cost_spec() const;

  /// C(age) for age in [0, horizon]. Throws std::domain_error outside.
  double cycle_cost(double age) const;
  /// C'(age); right-hand value at kinks (left-hand at the domain end).
  double cycle_cost_derivative(double age, Side side = Side::Right) const;
  /// v(0): the salvage component at age zero, or -C(0) in direct form.
  double salvage_at_zero() const;

  /// Model with the cycle cost replaced by its tangent beyond age z:
  /// C~(t) = C(z) + (t - z) C'(z) for t >= z.
  CostModel linearized_beyond(double z) const;

 private:
  struct Direct {
    FunctionSpec cycle_cost;
  };
  struct Linearized {
    std::shared_ptr<const CostModel> base;
    double cut;
    double value_at_cut;
    double slope_at_cut;
  };

  CostModel(std::variant<Components, Direct, Linearized> kind, double horizon,
            int validation_samples);

  std::variant<Components, Direct, Linearized> kind_;
  double horizon_;
  int validation_samples_;
};

/// Classifies the curvature of the cycle cost on [0, limit] by sampling
/// first differences of C' at validation_samples midpoints. An S-shape
/// whose inflection fails the tangent-dominance verification degrades to
/// General.
ShapeClass classify_shape(const CostModel& model);
ShapeClass classify_shape(const CostModel& model, double limit);

/// Locates the convex-to-concave transition age by bisection (interval
/// width 1e-10 * limit), lands on the supremum of any linear plateau, and
/// verifies C(x+d) - C(x) < C'(x) d on sampled d. Throws
/// std::runtime_error when the verification fails and
/// std::invalid_argument when no convex-then-concave transition exists.
double find_inflection(const CostModel& model);
double find_inflection(const CostModel& model, double limit);

}  // namespace upgrade
