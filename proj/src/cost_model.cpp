#include "upgrade/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace upgrade {

namespace {

double rel_tol(double reference) { return 1e-9 * (1.0 + std::abs(reference)); }

void check_finite_on_domain(const FunctionSpec& f, double horizon, int samples,
                            const char* name) {
  for (int i = 0; i < samples; ++i) {
    const double t = horizon * i / (samples - 1);
    if (!std::isfinite(f.value(t))) {
      throw std::invalid_argument(std::string(name) +
                                  " is not finite at age " + std::to_string(t));
    }
  }
}

void check_monotone(const FunctionSpec& f, double horizon, int samples,
                    bool non_decreasing, const char* name) {
  double prev = f.value(0.0);
  if (!std::isfinite(prev)) {
    throw std::invalid_argument(std::string(name) + " is not finite at age 0");
  }
  for (int i = 1; i < samples; ++i) {
    const double t = horizon * i / (samples - 1);
    const double cur = f.value(t);
    if (!std::isfinite(cur)) {
      throw std::invalid_argument(std::string(name) +
                                  " is not finite at age " + std::to_string(t));
    }
    const bool ok = non_decreasing ? cur >= prev - rel_tol(prev)
                                   : cur <= prev + rel_tol(prev);
    if (!ok) {
      throw std::invalid_argument(
          std::string(name) + " must be " +
          (non_decreasing ? "non-decreasing" : "non-increasing") +
          " on [0, horizon]; violated near age " + std::to_string(t));
    }
    prev = cur;
  }
}

}  // namespace

CostModel::CostModel(std::variant<Components, Direct, Linearized> kind,
                     double horizon, int validation_samples)
    : kind_(std::move(kind)),
      horizon_(horizon),
      validation_samples_(validation_samples) {}

CostModel CostModel::from_components(Components components, double horizon,
                                     int validation_samples) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  validation_samples = std::max(validation_samples, 16);
  const double cf0 = components.functionality_gap.value(0.0);
  if (std::abs(cf0) > rel_tol(0.0)) {
    throw std::invalid_argument(
        "functionality_gap must vanish at age 0 (got " + std::to_string(cf0) +
        ")");
  }
  check_monotone(components.salvage, horizon, validation_samples, false,
                 "salvage");
  check_monotone(components.functionality_gap, horizon, validation_samples,
                 true, "functionality_gap");
  check_monotone(components.repair_cost, horizon, validation_samples, true,
                 "repair_cost");
  check_monotone(components.failure_rate, horizon, validation_samples, true,
                 "failure_rate");
  return CostModel(std::move(components), horizon, validation_samples);
}

CostModel CostModel::from_cycle_cost(FunctionSpec cycle_cost, double horizon,
                                     int validation_samples) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  validation_samples = std::max(validation_samples, 16);
  check_finite_on_domain(cycle_cost, horizon, validation_samples,
                         "cycle_cost");
  return CostModel(Direct{std::move(cycle_cost)}, horizon, validation_samples);
}

bool CostModel::has_components() const {
  return std::holds_alternative<Components>(kind_);
}

const CostModel::Components& CostModel::components() const {
  return std::get<Components>(kind_);
}

const FunctionSpec& CostModel::cycle_cost_spec() const {
  return std::get<Direct>(kind_).cycle_cost;
}

double CostModel::cycle_cost(double age) const {
  // Absorb floating-point slop from interval arithmetic at the endpoints.
  const double slack = 1e-9 * horizon_;
  if (age < 0.0 && age >= -slack) age = 0.0;
  if (age > horizon_ && age <= horizon_ + slack) age = horizon_;
  if (age < 0.0 || age > horizon_) {
    throw std::domain_error("age " + std::to_string(age) +
                            " outside [0, horizon]");
  }
  if (const auto* c = std::get_if<Components>(&kind_)) {
    return -c->salvage.value(age) + c->functionality_gap.integral(age) +
           integral_of_product(c->repair_cost, c->failure_rate, age);
  }
  if (const auto* d = std::get_if<Direct>(&kind_)) {
    return d->cycle_cost.value(age);
  }
  const auto& lin = std::get<Linearized>(kind_);
  if (age <= lin.cut) return lin.base->cycle_cost(age);
  return lin.value_at_cut + (age - lin.cut) * lin.slope_at_cut;
}

double CostModel::cycle_cost_derivative(double age, Side side) const {
  const double slack = 1e-9 * horizon_;
  if (age < 0.0 && age >= -slack) age = 0.0;
  if (age > horizon_ && age <= horizon_ + slack) age = horizon_;
  if (age < 0.0 || age > horizon_) {
    throw std::domain_error("age " + std::to_string(age) +
                            " outside [0, horizon]");
  }
  if (age == horizon_) side = Side::Left;
  if (const auto* c = std::get_if<Components>(&kind_)) {
    // C'(T) = -v'(T) + cf(T) + k(T) h(T)
    return -c->salvage.derivative(age, side) +
           c->functionality_gap.value(age, side) +
           c->repair_cost.value(age, side) * c->failure_rate.value(age, side);
  }
  if (const auto* d = std::get_if<Direct>(&kind_)) {
    return d->cycle_cost.derivative(age, side);
  }
  const auto& lin = std::get<Linearized>(kind_);
  if (age < lin.cut || (age == lin.cut && side == Side::Left)) {
    return lin.base->cycle_cost_derivative(age, side);
  }
  return lin.slope_at_cut;
}

double CostModel::salvage_at_zero() const {
  if (const auto* c = std::get_if<Components>(&kind_)) {
    return c->salvage.value(0.0);
  }
  return -cycle_cost(0.0);
}

CostModel CostModel::linearized_beyond(double z) const {
  if (!(z > 0.0 && z < horizon_)) {
    throw std::invalid_argument("linearization age must lie inside (0, horizon)");
  }
  Linearized lin;
  lin.base = std::make_shared<CostModel>(*this);
  lin.cut = z;
  lin.value_at_cut = cycle_cost(z);
  lin.slope_at_cut = cycle_cost_derivative(z);
  return CostModel(std::move(lin), horizon_, validation_samples_);
}

namespace {

// Curvature samples: first differences of C' at interior midpoints.
// Midpoints avoid divergent derivatives at the domain endpoints (e.g.
// fractional powers).
struct CurvatureScan {
  std::vector<double> ages;    // sample ages (midpoints)
  std::vector<int> signs;      // sign of C'(ages[i+1]) - C'(ages[i])
  double tol = 0.0;
};

CurvatureScan scan_curvature(const CostModel& model, double limit) {
  const int n = std::max(model.validation_samples(), 16);
  CurvatureScan scan;
  scan.ages.resize(n);
  std::vector<double> deriv(n);
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    scan.ages[i] = limit * (i + 0.5) / n;
    deriv[i] = model.cycle_cost_derivative(scan.ages[i]);
    max_abs = std::max(max_abs, std::abs(deriv[i]));
  }
  scan.tol = 1e-9 * (1.0 + max_abs);
  scan.signs.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const double d = deriv[i + 1] - deriv[i];
    scan.signs[i] = d > scan.tol ? 1 : (d < -scan.tol ? -1 : 0);
  }
  return scan;
}

// Refines a curvature change inside [a, b], where C' is unimodal (rises
// then falls when to_concave, the reverse otherwise). Two phases: locate
// the extremum of C' by ternary search, then bisect for the rightmost age
// still attaining the extremal level. Landing on the right edge resolves
// linear plateaus to their supremum.
double refine_transition(const CostModel& model, double a, double b,
                         double limit, bool to_concave) {
  const double sign = to_concave ? 1.0 : -1.0;
  const auto value = [&](double t) {
    return sign * model.cycle_cost_derivative(t);
  };
  const double target = 1e-10 * limit;
  const double right_end = b;
  while (b - a > target) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    const double f1 = value(m1);
    const double f2 = value(m2);
    if (f1 < f2) {
      a = m1;
    } else if (f2 < f1) {
      b = m2;
    } else {
      a = m1;
      b = m2;
    }
  }
  const double peak_at = 0.5 * (a + b);
  const double peak = value(peak_at);
  const double level_tol =
      4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(peak));

  double lo = peak_at;
  double hi = right_end;
  if (value(hi) >= peak - level_tol) return hi;
  while (hi - lo > target) {
    const double m = 0.5 * (lo + hi);
    if (value(m) >= peak - level_tol) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

void verify_tangent_dominance(const CostModel& model, double x, double limit) {
  const double cx = model.cycle_cost(x);
  const double slope = model.cycle_cost_derivative(x);
  const double span = limit - x;
  if (span <= 0.0) {
    throw std::runtime_error("inflection lies at the domain end");
  }
  auto check = [&](double delta) {
    const double lhs = model.cycle_cost(x + delta) - cx;
    const double rhs = slope * delta;
    const double tol = 1e-9 * (1.0 + std::abs(cx) + std::abs(rhs));
    if (lhs >= rhs + tol) {
      throw std::runtime_error(
          "cycle cost exceeds its tangent beyond the inflection (offset " +
          std::to_string(delta) + "); shape is not S-shaped");
    }
  };
  for (int j = 1; j <= 64; ++j) check(span * j / 64.0);
  for (double frac : {1e-6, 1e-4, 1e-2}) check(span * frac);
}

double locate_inflection(const CostModel& model, const CurvatureScan& scan,
                         double limit) {
  int last_plus = -1;
  for (int i = 0; i < static_cast<int>(scan.signs.size()); ++i) {
    if (scan.signs[i] > 0) last_plus = i;
  }
  if (last_plus < 0) {
    throw std::invalid_argument(
        "no convex prefix: the cycle cost has no rising derivative stretch");
  }
  int first_minus = -1;
  for (int i = last_plus + 1; i < static_cast<int>(scan.signs.size()); ++i) {
    if (scan.signs[i] < 0) {
      first_minus = i;
      break;
    }
  }
  if (first_minus < 0) {
    throw std::invalid_argument(
        "no concave suffix after the convex stretch; shape is not S-shaped");
  }
  const double a = scan.ages[last_plus];
  const double b = scan.ages[first_minus + 1];
  const double x = refine_transition(model, a, b, limit, /*to_concave=*/true);
  verify_tangent_dominance(model, x, limit);
  return x;
}

}  // namespace

ShapeClass classify_shape(const CostModel& model) {
  return classify_shape(model, model.horizon());
}

ShapeClass classify_shape(const CostModel& model, double limit) {
  const CurvatureScan scan = scan_curvature(model, limit);
  const bool has_minus =
      std::any_of(scan.signs.begin(), scan.signs.end(),
                  [](int s) { return s < 0; });
  const bool has_plus = std::any_of(scan.signs.begin(), scan.signs.end(),
                                    [](int s) { return s > 0; });
  ShapeClass shape;
  if (!has_minus) {
    shape.tag = ShapeClass::Tag::Convex;
    return shape;
  }
  if (!has_plus) {
    shape.tag = ShapeClass::Tag::Concave;
    return shape;
  }

  // Compress the nonzero signs into runs; zero plateaus are absorbed.
  std::vector<std::pair<int, int>> runs;  // (sign, last sample index of run)
  for (int i = 0; i < static_cast<int>(scan.signs.size()); ++i) {
    const int s = scan.signs[i];
    if (s == 0) continue;
    if (runs.empty() || runs.back().first != s) {
      runs.push_back({s, i});
    } else {
      runs.back().second = i;
    }
  }

  if (runs.size() == 2 && runs[0].first > 0 && runs[1].first < 0) {
    try {
      shape.tag = ShapeClass::Tag::SShaped;
      shape.inflection = locate_inflection(model, scan, limit);
      return shape;
    } catch (const std::exception&) {
      // Fall through to the general classification.
    }
  }

  shape.tag = ShapeClass::Tag::General;
  shape.inflection = std::numeric_limits<double>::quiet_NaN();
  double boundary = 0.0;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const double a = scan.ages[runs[r].second];
    const double b = scan.ages[runs[r + 1].second + 1];
    const double cut = refine_transition(model, a, b, limit,
                                         /*to_concave=*/runs[r].first > 0);
    shape.pieces.push_back({boundary, cut, runs[r].first > 0});
    boundary = cut;
  }
  shape.pieces.push_back({boundary, limit, runs.back().first > 0});
  return shape;
}

double find_inflection(const CostModel& model) {
  return find_inflection(model, model.horizon());
}

double find_inflection(const CostModel& model, double limit) {
  const CurvatureScan scan = scan_curvature(model, limit);
  return locate_inflection(model, scan, limit);
}

}  // namespace upgrade
