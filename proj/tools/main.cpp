#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "upgrade/base_solver.hpp"
#include "upgrade/instance_io.hpp"
#include "upgrade/oracle.hpp"
#include "upgrade/overhaul_dp.hpp"
#include "upgrade/sensitivity.hpp"

namespace {

using namespace upgrade;

// Shortest round-trip decimal form, for CSV output.
std::string full_precision(double v) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, ptr);
}

// Six significant digits, for human-readable tables.
std::string fmt6(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

std::string join_times(const std::vector<double>& times, const char* sep,
                       bool full) {
  std::string out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) out += sep;
    out += full ? full_precision(times[i]) : fmt6(times[i]);
  }
  return out;
}

std::string shape_line(const ShapeClass& shape) {
  switch (shape.tag) {
    case ShapeClass::Tag::Convex:
      return "Convex";
    case ShapeClass::Tag::Concave:
      return "Concave";
    case ShapeClass::Tag::SShaped:
      return "SShaped, x = " + fmt6(shape.inflection);
    case ShapeClass::Tag::General: {
      std::string out = "General";
      for (const auto& piece : shape.pieces) {
        out += std::string("; [") + fmt6(piece.from) + ", " + fmt6(piece.to) +
               "] " + (piece.convex ? "convex" : "concave");
      }
      return out;
    }
  }
  return "General";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io::ParseError("io", "cannot open instance file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io::ParseError("io", "cannot write output file '" + path + "'");
  }
  out << content;
}

int policy_s(const Instance& instance, const Policy& policy) {
  return policy.off_overhaul_count(instance.overhauls,
                                   overhaul_match_tol(instance.horizon));
}

void print_result(const Instance& instance, const SolveResult& result) {
  std::cout << "shape: " << shape_line(result.shape) << "\n";
  std::cout << "upgrades (N): " << result.policy.upgrades() << "\n";
  std::cout << "off-overhaul (S): " << policy_s(instance, result.policy)
            << "\n";
  std::cout << "upgrade times: "
            << (result.policy.empty()
                    ? "none"
                    : join_times(result.policy.times(), ", ", false))
            << "\n";
  std::cout << "total cost: " << fmt6(result.total_cost) << "\n";
}

std::string solve_csv(const Instance& instance, const SolveResult& result) {
  std::string csv = "cost,N,S,upgrade_times\n";
  csv += full_precision(result.total_cost) + "," +
         std::to_string(result.policy.upgrades()) + "," +
         std::to_string(policy_s(instance, result.policy)) + "," +
         join_times(result.policy.times(), ";", true) + "\n";
  return csv;
}

std::string sweep_csv(const Instance& instance, const SweepResult& sweep) {
  std::string csv = "param_value,cost,N,S,upgrade_times\n";
  for (const auto& sample : sweep.samples) {
    csv += full_precision(sample.parameter) + "," +
           full_precision(sample.result.total_cost) + "," +
           std::to_string(sample.result.policy.upgrades()) + "," +
           std::to_string(policy_s(instance, sample.result.policy)) + "," +
           join_times(sample.result.policy.times(), ";", true) + "\n";
  }
  return csv;
}

void print_sweep(const Instance& instance, const SweepResult& sweep) {
  std::printf("%12s %14s %4s %4s  %s\n", sweep.parameter.c_str(), "cost", "N",
              "S", "upgrade times");
  for (const auto& sample : sweep.samples) {
    const std::string times =
        sample.result.policy.empty()
            ? "none"
            : join_times(sample.result.policy.times(), ", ", false);
    std::printf("%12s %14s %4d %4d  %s\n", fmt6(sample.parameter).c_str(),
                fmt6(sample.result.total_cost).c_str(),
                sample.result.policy.upgrades(),
                policy_s(instance, sample.result.policy), times.c_str());
  }
  if (sweep.breakpoints.empty()) {
    std::cout << "breakpoints: none\n";
  } else {
    std::cout << "breakpoints: " << join_times(sweep.breakpoints, ", ", false)
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon upgrade-policy optimizer"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string csv_path;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  double step = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance file (JSON)")
        ->required();
    cmd->add_option("--csv", csv_path, "write machine-readable CSV here");
  };

  CLI::App* cmd_solve = app.add_subcommand(
      "solve", "optimal policy (routes on the penalty value)");
  add_common(cmd_solve);
  CLI::App* cmd_base = app.add_subcommand(
      "solve-base", "base case: zero penalty, price taken from the instance");
  add_common(cmd_base);
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "grid-restricted brute-force check");
  add_common(cmd_oracle);
  cmd_oracle->add_option("--step", step, "grid resolution")->required();
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "parametric sweep");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--param", param, "one of cd, c0, m")->required();
  cmd_sweep->add_option("--from", from, "range start")->required();
  cmd_sweep->add_option("--to", to, "range end")->required();
  cmd_sweep->add_option("--points", points, "sample count (cd and c0 sweeps)");
  CLI::App* cmd_classify =
      app.add_subcommand("classify", "cycle-cost shape classification");
  add_common(cmd_classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    const Instance instance = io::parse_instance(read_file(instance_path));

    if (app.got_subcommand(cmd_classify)) {
      std::cout << shape_line(classify_shape(instance.model, instance.horizon))
                << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_solve) || app.got_subcommand(cmd_base) ||
        app.got_subcommand(cmd_oracle)) {
      SolveResult result;
      if (app.got_subcommand(cmd_solve)) {
        result = solve_instance(instance);
      } else if (app.got_subcommand(cmd_base)) {
        result = solve_base(instance, instance.price);
      } else {
        result = oracle_solve(instance, GridSpec{step, true});
      }
      print_result(instance, result);
      if (!csv_path.empty()) write_file(csv_path, solve_csv(instance, result));
      return 0;
    }

    // sweep
    SweepResult sweep;
    if (param == "cd") {
      if (points < 2) {
        throw std::invalid_argument("sweep over cd requires --points >= 2");
      }
      sweep = sweep_penalty(instance, from, to, points);
    } else if (param == "c0") {
      if (points < 2) {
        throw std::invalid_argument("sweep over c0 requires --points >= 2");
      }
      sweep = sweep_price(instance, from, to, points);
    } else if (param == "m") {
      std::vector<int> m_values;
      for (int m = static_cast<int>(from); m <= static_cast<int>(to); ++m) {
        m_values.push_back(m);
      }
      if (m_values.empty()) {
        throw std::invalid_argument("sweep over m has an empty range");
      }
      sweep = sweep_overhaul_count(instance, m_values);
    } else {
      throw std::invalid_argument("unknown sweep parameter '" + param +
                                  "' (expected cd, c0, or m)");
    }
    print_sweep(instance, sweep);
    if (!csv_path.empty()) write_file(csv_path, sweep_csv(instance, sweep));
    return 0;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    if (e.code() == "syntax") return 3;
    if (e.code() == "schema") return 4;
    if (e.code() == "semantic") return 5;
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid-argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 7;
  }
}
