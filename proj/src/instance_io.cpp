#include "upgrade/instance_io.hpp"

#include <json.hpp>

#include <utility>

namespace upgrade::io {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& what) {
  throw ParseError("schema", path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema_error(path, std::string("missing field '") + key + "'");
  }
  return *it;
}

double require_number(const json& obj, const char* key,
                      const std::string& path) {
  const json& value = require(obj, key, path);
  if (!value.is_number()) {
    schema_error(path + "." + key, "expected a number");
  }
  return value.get<double>();
}

FunctionSpec parse_function(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected a function object");
  const json& fam = require(node, "family", path);
  if (!fam.is_string()) schema_error(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();
  try {
    if (family == "constant") {
      return FunctionSpec::constant(require_number(node, "value", path));
    }
    if (family == "polynomial") {
      const json& coeffs = require(node, "coefficients", path);
      if (!coeffs.is_array() || coeffs.empty()) {
        schema_error(path + ".coefficients", "expected a non-empty array");
      }
      std::vector<double> c;
      for (const auto& v : coeffs) {
        if (!v.is_number()) {
          schema_error(path + ".coefficients", "expected numbers");
        }
        c.push_back(v.get<double>());
      }
      return FunctionSpec::polynomial(std::move(c));
    }
    if (family == "power") {
      return FunctionSpec::power(require_number(node, "scale", path),
                                 require_number(node, "exponent", path));
    }
    if (family == "logistic") {
      return FunctionSpec::logistic(require_number(node, "limit", path),
                                    require_number(node, "rate", path),
                                    require_number(node, "midpoint", path));
    }
    if (family == "sum") {
      const json& terms = require(node, "terms", path);
      if (!terms.is_array() || terms.empty()) {
        schema_error(path + ".terms", "expected a non-empty array");
      }
      std::vector<FunctionSpec> parsed;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        parsed.push_back(parse_function(
            terms[i], path + ".terms[" + std::to_string(i) + "]"));
      }
      return FunctionSpec::sum(std::move(parsed));
    }
    if (family == "scaled") {
      return FunctionSpec::scaled(
          require_number(node, "factor", path),
          parse_function(require(node, "inner", path), path + ".inner"));
    }
    if (family == "piecewise") {
      const json& pieces = require(node, "pieces", path);
      if (!pieces.is_array() || pieces.empty()) {
        schema_error(path + ".pieces", "expected a non-empty array");
      }
      std::vector<FunctionSpec::Piece> parsed;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string piece_path =
            path + ".pieces[" + std::to_string(i) + "]";
        parsed.push_back(
            {require_number(pieces[i], "from", piece_path),
             require_number(pieces[i], "to", piece_path),
             parse_function(require(pieces[i], "function", piece_path),
                            piece_path + ".function")});
      }
      return FunctionSpec::piecewise(std::move(parsed));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError("semantic", path + ": " + e.what());
  }
  schema_error(path + ".family", "unknown family '" + family + "'");
}

json function_to_json(const FunctionSpec& fn) {
  json node;
  switch (fn.family()) {
    case FunctionSpec::Family::Constant:
      node["family"] = "constant";
      node["value"] = fn.constant_value();
      break;
    case FunctionSpec::Family::Polynomial:
      node["family"] = "polynomial";
      node["coefficients"] = fn.coefficients();
      break;
    case FunctionSpec::Family::Power:
      node["family"] = "power";
      node["scale"] = fn.power_scale();
      node["exponent"] = fn.power_exponent();
      break;
    case FunctionSpec::Family::Logistic:
      node["family"] = "logistic";
      node["limit"] = fn.logistic_limit();
      node["rate"] = fn.logistic_rate();
      node["midpoint"] = fn.logistic_midpoint();
      break;
    case FunctionSpec::Family::Sum: {
      node["family"] = "sum";
      json terms = json::array();
      for (const auto& term : fn.terms()) terms.push_back(function_to_json(term));
      node["terms"] = std::move(terms);
      break;
    }
    case FunctionSpec::Family::Scaled:
      node["family"] = "scaled";
      node["factor"] = fn.scaled_factor();
      node["inner"] = function_to_json(fn.scaled_inner());
      break;
    case FunctionSpec::Family::Piecewise: {
      node["family"] = "piecewise";
      json pieces = json::array();
      for (const auto& piece : fn.pieces()) {
        pieces.push_back({{"from", piece.from},
                          {"to", piece.to},
                          {"function", function_to_json(piece.fn)}});
      }
      node["pieces"] = std::move(pieces);
      break;
    }
  }
  return node;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("syntax", std::string("byte ") + std::to_string(e.byte) +
                                   ": " + e.what());
  }
  if (!doc.is_object()) schema_error("$", "expected a top-level object");

  const double horizon = require_number(doc, "horizon", "$");
  const double price = require_number(doc, "price", "$");

  Penalty penalty(0.0);
  const json& penalty_node = require(doc, "penalty", "$");
  if (penalty_node.is_string()) {
    if (penalty_node.get<std::string>() != "infinity") {
      schema_error("$.penalty", "expected a number or the string 'infinity'");
    }
    penalty = Penalty::infinite();
  } else if (penalty_node.is_number()) {
    try {
      penalty = Penalty(penalty_node.get<double>());
    } catch (const std::invalid_argument& e) {
      throw ParseError("semantic", std::string("penalty: ") + e.what());
    }
  } else {
    schema_error("$.penalty", "expected a number or the string 'infinity'");
  }

  std::vector<double> overhauls;
  const json& overhaul_node = require(doc, "overhauls", "$");
  if (overhaul_node.is_array()) {
    for (const auto& v : overhaul_node) {
      if (!v.is_number()) schema_error("$.overhauls", "expected numbers");
      overhauls.push_back(v.get<double>());
    }
  } else if (overhaul_node.is_object()) {
    const json& spacing = require(overhaul_node, "spacing", "$.overhauls");
    if (!spacing.is_string() || spacing.get<std::string>() != "equidistant") {
      schema_error("$.overhauls.spacing", "only 'equidistant' is supported");
    }
    const json& count = require(overhaul_node, "count", "$.overhauls");
    if (!count.is_number_integer() || count.get<int>() < 0) {
      schema_error("$.overhauls.count", "expected a non-negative integer");
    }
    const int m = count.get<int>();
    for (int i = 1; i <= m; ++i) overhauls.push_back(horizon * i / (m + 1));
  } else {
    schema_error("$.overhauls", "expected an array or {count, spacing}");
  }

  const json& model_node = require(doc, "cost_model", "$");
  if (!model_node.is_object()) schema_error("$.cost_model", "expected an object");
  int samples = 2048;
  if (auto it = model_node.find("validation_samples"); it != model_node.end()) {
    if (!it->is_number_integer() || it->get<int>() < 2) {
      schema_error("$.cost_model.validation_samples",
                   "expected an integer >= 2");
    }
    samples = it->get<int>();
  }

  const bool direct = model_node.contains("cycle_cost");
  const bool components = model_node.contains("salvage") ||
                          model_node.contains("functionality_gap") ||
                          model_node.contains("repair_cost") ||
                          model_node.contains("failure_rate");
  if (direct == components) {
    schema_error("$.cost_model",
                 "expected either 'cycle_cost' or the four component "
                 "functions (salvage, functionality_gap, repair_cost, "
                 "failure_rate)");
  }

  try {
    CostModel model =
        direct
            ? CostModel::from_cycle_cost(
                  parse_function(require(model_node, "cycle_cost",
                                         "$.cost_model"),
                                 "$.cost_model.cycle_cost"),
                  horizon, samples)
            : CostModel::from_components(
                  {parse_function(require(model_node, "salvage", "$.cost_model"),
                                  "$.cost_model.salvage"),
                   parse_function(
                       require(model_node, "functionality_gap", "$.cost_model"),
                       "$.cost_model.functionality_gap"),
                   parse_function(
                       require(model_node, "repair_cost", "$.cost_model"),
                       "$.cost_model.repair_cost"),
                   parse_function(
                       require(model_node, "failure_rate", "$.cost_model"),
                       "$.cost_model.failure_rate")},
                  horizon, samples);
    Instance instance{horizon, price, penalty, std::move(overhauls),
                      std::move(model)};
    instance.validate();
    return instance;
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError("semantic", e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["horizon"] = instance.horizon;
  doc["price"] = instance.price;
  if (instance.penalty.is_infinite()) {
    doc["penalty"] = "infinity";
  } else {
    doc["penalty"] = instance.penalty.value();
  }
  doc["overhauls"] = instance.overhauls;
  json model;
  model["validation_samples"] = instance.model.validation_samples();
  if (instance.model.has_components()) {
    const auto& c = instance.model.components();
    model["salvage"] = function_to_json(c.salvage);
    model["functionality_gap"] = function_to_json(c.functionality_gap);
    model["repair_cost"] = function_to_json(c.repair_cost);
    model["failure_rate"] = function_to_json(c.failure_rate);
  } else {
    model["cycle_cost"] = function_to_json(instance.model.cycle_cost_spec());
  }
  doc["cost_model"] = std::move(model);
  return doc.dump(2) + "\n";
}

}  // namespace upgrade::io
