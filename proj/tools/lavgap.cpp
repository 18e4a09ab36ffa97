// Copyright 2026 The lavgap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lavgap/conditions.hpp"
#include "lavgap/construction.hpp"
#include "lavgap/energy.hpp"
#include "lavgap/fixtures.hpp"
#include "lavgap/gapsearch.hpp"
#include "lavgap/problem.hpp"
#include "lavgap/serialize.hpp"

namespace fs = std::filesystem;
using namespace lavgap;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kAssertionFailure = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem = "mania";
  std::string config_path;
  std::vector<std::string> params;
  std::string trajectory;
  std::string variant;
  int hmax = 12;
  int first_h = 1;
  double nu0 = 0.0;
  std::vector<double> window;
  std::vector<double> bounds{2.0, 4.0, 8.0, 16.0, 32.0};
  std::vector<std::size_t> knots{32, 128};
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
  double quad_tol = 0.0;
};

struct Resolved {
  Problem problem;
  Trajectory y;
  bool boundary_from_config = false;
};

std::string default_trajectory(const std::string& problem) {
  if (problem == "mania") return "cuberoot";
  if (problem == "arclength") return "sqrt";
  if (problem.rfind("alberti", 0) == 0) return "one_minus_sqrt";
  return "affine";
}

QuadratureSpec quad_of(const RunConfig& c) {
  QuadratureSpec q;
  q.workers = c.workers;
  if (c.quad_tol > 0.0) q.rel_tol = c.quad_tol;
  return q;
}

BoundaryData boundary_for(const std::string& variant, const Trajectory& y) {
  const auto X = y.value(y.interval().t());
  const auto Y = y.value(y.interval().T());
  if (variant == "initial") return BoundaryData::initial(X);
  if (variant == "final") return BoundaryData::final_only(Y);
  if (variant == "both" || variant.empty()) return BoundaryData::both(X, Y);
  throw ConfigError("--variant must be initial, final or both");
}

Resolved resolve(const RunConfig& c) {
  Resolved r;
  try {
    if (!c.config_path.empty()) {
      r.problem = load_problem(c.config_path);
      r.boundary_from_config = true;
    } else {
      Params params;
      for (const auto& kv : c.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects key=value, got " + kv);
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      r.problem.lagrangian_name = c.problem;
      r.problem.params = params;
      r.problem.lag = builtin(c.problem, params);
    }
    const std::string name =
        c.trajectory.empty() ? default_trajectory(r.problem.lagrangian_name) : c.trajectory;
    if (fs::exists(name)) {
      std::ifstream in(name);
      r.y = trajectory_from_json(json::parse(in));
    } else {
      r.y = fixtures::by_name(name);
    }
    if (!r.boundary_from_config || !c.variant.empty()) {
      r.problem.boundary = boundary_for(c.variant, r.y);
    }
    r.problem.boundary.validate(r.problem.lag.dimension);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return r;
}

void ensure_out(const RunConfig& c) {
  if (c.out.empty()) return;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec || !fs::is_directory(c.out)) throw ConfigError("cannot create output directory " + c.out);
}

void write_file(const RunConfig& c, const std::string& name, const std::string& text) {
  if (c.out.empty()) return;
  std::ofstream f(fs::path(c.out) / name);
  f << text;
}

std::string csv_text(const CsvTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

std::string constants_text(const ConditionReport& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : r.constants) {
    os << (first ? "" : " ") << k << "=" << format_number(v);
    first = false;
  }
  if (r.window) os << " window=]" << r.window->a << ", " << r.window->b << "[";
  if (r.witness) {
    os << " witness(s=" << r.witness->s << ", y=" << r.witness->y.at(0)
       << ", u=" << (r.witness->u.empty() ? 0.0 : r.witness->u[0]) << ")";
  }
  return os.str();
}

int cmd_check(const RunConfig& c) {
  ensure_out(c);
  const Resolved r = resolve(c);
  Sampling sampling;
  sampling.seed = c.seed;
  sampling.workers = c.workers;
  const auto reports = run_all_checks(r.problem.lag, r.y, sampling);
  const GateResult gate = theorem_gate(r.problem.lag, r.y, r.problem.boundary, reports, quad_of(c));

  std::cout << "problem " << r.problem.lagrangian_name << ", trajectory " << r.y.name()
            << ", boundary " << to_string(r.problem.boundary.kind) << "\n\n";
  std::cout << std::left << std::setw(11) << "condition" << std::setw(18) << "verdict"
            << "constants\n";
  for (const auto& rep : reports) {
    std::cout << std::left << std::setw(11) << to_string(rep.condition) << std::setw(18)
              << to_string(rep.verdict) << constants_text(rep) << "\n";
  }
  std::cout << "\nF(y) = " << gate.energy << ", integral of Lambda = " << gate.lambda_energy
            << "\n";
  std::cout << "claim 1 (one end pinned): " << (gate.claim1 ? "applicable" : "not applicable")
            << "\n";
  std::cout << "claim 2 (both ends pinned): " << (gate.claim2 ? "applicable" : "not applicable")
            << "\n";
  std::cout << "gate for " << to_string(gate.variant) << ": "
            << (gate.applicable ? "applicable" : "not applicable");
  if (!gate.missing.empty()) {
    std::cout << ", missing";
    for (const auto& m : gate.missing) std::cout << " " << m;
  }
  std::cout << "\n";

  json doc;
  doc["reports"] = json::array();
  for (const auto& rep : reports) doc["reports"].push_back(to_json(rep));
  doc["gate"] = to_json(gate);
  write_file(c, "check.json", doc.dump(2));
  return kOk;
}

ConstructionSequence run_construction(const RunConfig& c, const Resolved& r) {
  Sampling sampling;
  sampling.seed = c.seed;
  StageParams params;
  try {
    params = suggest_stage_params(r.problem.lag, r.y, r.problem.boundary, sampling);
  } catch (const std::invalid_argument&) {
    if (!(c.nu0 > 0.0)) throw;
  }
  if (c.nu0 > 0.0) params.nu0 = c.nu0;
  if (c.window.size() == 2) params.U = Component{c.window[0], c.window[1]};
  ConstructionOptions opts;
  opts.first_h = c.first_h;
  opts.quad = quad_of(c);
  opts.workers = c.workers;
  return construct_sequence(r.problem.lag, r.y, r.problem.boundary, params, c.hmax, opts);
}

int cmd_construct(const RunConfig& c) {
  ensure_out(c);
  const Resolved r = resolve(c);
  ConstructionSequence seq;
  try {
    seq = run_construction(c, r);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const CsvTable table = construction_csv(seq);
  write_csv(std::cout, table);
  write_file(c, "construction.csv", csv_text(table));
  write_file(c, "construction_long.csv", csv_text(construction_long_csv(seq)));
  json doc;
  doc["variant"] = to_string(seq.variant);
  doc["energy_y"] = to_json(seq.energy_y);
  doc["nu0"] = seq.params.nu0;
  doc["reports"] = json::array();
  for (const auto& rep : seq.reports) doc["reports"].push_back(to_json(rep));
  write_file(c, "construction.json", doc.dump(2));

  const auto failures = verify_sequence(seq, r.y);
  for (const auto& f : failures) std::cerr << "invariant: " << f << "\n";
  return failures.empty() ? kOk : kAssertionFailure;
}

GapOptions gap_options(const RunConfig& c) {
  GapOptions g;
  g.bounds = c.bounds;
  g.knots = c.knots;
  g.restarts = c.restarts;
  g.seed = c.seed;
  g.workers = c.workers;
  g.quad = quad_of(c);
  return g;
}

int cmd_gap(const RunConfig& c) {
  ensure_out(c);
  const Resolved r = resolve(c);
  const GapEstimate est = gap_report(r.problem.lag, r.y, r.problem.boundary, gap_options(c));
  const CsvTable table = sweep_csv(est.lip_inf_per_bound);
  write_csv(std::cout, table);
  std::cout << "F(candidate) = " << est.F_candidate << ", Lipschitz infimum estimate = "
            << est.lip_inf << ", verdict " << to_string(est.verdict) << "\n";
  write_file(c, "sweep.csv", csv_text(table));
  write_file(c, "gap.json", to_json(est).dump(2));
  return kOk;
}

struct Summary {
  bool ok = true;
  void line(bool pass, const std::string& what) {
    std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
    ok = ok && pass;
  }
};

int demo_mania(const RunConfig& c, Summary& sum) {
  const auto lag = builtin("mania");
  const auto y = fixtures::cuberoot();
  StageParams params;
  params.nu0 = 1.0;
  ConstructionOptions opts;
  opts.workers = c.workers;
  const auto seq = construct_sequence(lag, y, BoundaryData::final_only({1.0}), params, 12, opts);
  bool zero = true, pinned = true, decreasing = true;
  double prev = INFINITY;
  for (const auto& rep : seq.reports) {
    zero = zero && rep.diagnostics.energy_y_h == ExtendedValue::zero();
    pinned = pinned && rep.y_h.value1(1.0) == 1.0;
    const double d = rep.diagnostics.sobolev_distance_to_y.to_double();
    decreasing = decreasing && d < prev;
    prev = d;
  }
  sum.line(zero, "energy(y_h) = 0 for h = 1..12");
  sum.line(pinned, "y_h(1) = 1 for h = 1..12");
  sum.line(decreasing && prev < 0.05,
           "W^{1,1} distance decreasing, final " + format_number(prev) + " < 0.05");
  SearchOptions so;
  so.restarts = 4;
  so.seed = c.seed;
  const auto r = minimize_lipschitz(lag, make_space(lag, BoundaryData::final_only({1.0}), 64, 2.0), so);
  sum.line(r.value.to_double() <= 1e-3,
           "one-endpoint Lipschitz infimum " + r.value.to_string() + " <= 1e-3");
  return kOk;
}

int demo_alberti(const RunConfig& c, Summary& sum) {
  const auto lag = builtin("alberti_two_endpoint");
  const auto y = fixtures::one_minus_sqrt();
  StageParams params;
  params.nu0 = 0.4;
  ConstructionOptions opts;
  opts.workers = c.workers;
  const auto seq = construct_sequence(lag, y, BoundaryData::initial({0.0}), params, 12, opts);
  bool zero = true;
  for (const auto& rep : seq.reports) zero = zero && rep.diagnostics.energy_y_h == ExtendedValue::zero();
  sum.line(zero, "one-endpoint construction: energy(y_h) = 0 for h = 1..12");
  SearchOptions so;
  so.restarts = c.restarts;
  so.seed = c.seed;
  so.workers = c.workers;
  const auto r =
      minimize_lipschitz(lag, make_space(lag, BoundaryData::both({0.0}, {1.0}), 128, 8.0), so);
  bool all_inf = r.value.is_infinite();
  for (const auto& rr : r.restarts) all_inf = all_inf && rr.final_value.is_infinite();
  sum.line(all_inf, "two-endpoint search: all " + std::to_string(r.restarts.size()) +
                        " starts end at +inf");
  return kOk;
}

int demo_alberti2(const RunConfig& c, Summary& sum) {
  const auto lag = builtin("alberti_one_endpoint");
  const auto y = fixtures::one_minus_sqrt();
  GapOptions g;
  g.bounds = {2.0, 8.0, 32.0};
  g.knots = {32};
  g.restarts = std::min<std::size_t>(c.restarts, 8);
  g.seed = c.seed;
  g.workers = c.workers;
  const auto est = gap_report(lag, y, BoundaryData::final_only({1.0}), g);
  sum.line(est.F_candidate == ExtendedValue::zero(), "F(y) = 0");
  bool all_inf = true;
  for (const auto& row : est.lip_inf_per_bound) all_inf = all_inf && row.best_value.is_infinite();
  sum.line(all_inf, "every Lipschitz search with y(1) = 1 ends at +inf");
  sum.line(est.verdict == GapVerdict::gap_detected, "verdict " + to_string(est.verdict));
  return kOk;
}

int cmd_demo(const RunConfig& c, const std::string& name) {
  Summary sum;
  if (name == "mania") {
    demo_mania(c, sum);
  } else if (name == "alberti") {
    demo_alberti(c, sum);
  } else if (name == "alberti2") {
    demo_alberti2(c, sum);
  } else {
    throw ConfigError("unknown demo '" + name + "' (mania, alberti, alberti2)");
  }
  std::cout << (sum.ok ? "demo " + name + ": pass\n" : "demo " + name + ": fail\n");
  return sum.ok ? kOk : kAssertionFailure;
}

void add_problem_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--problem", c.problem, "built-in Lagrangian");
  sub->add_option("--config", c.config_path, "problem JSON file");
  sub->add_option("--param", c.params, "Lagrangian parameter key=value");
  sub->add_option("--trajectory", c.trajectory, "fixture name or trajectory JSON file");
  sub->add_option("--variant", c.variant, "initial | final | both");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--quad-tol", c.quad_tol, "relative quadrature tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lavrentiev gap experiments for product Lagrangians"};
  app.require_subcommand(1);
  RunConfig c;
  std::string demo_name;

  auto* check = app.add_subcommand("check", "check the hypotheses and the theorem gate");
  add_problem_options(check, c);

  auto* construct = app.add_subcommand("construct", "build the Lipschitz approximations y_h");
  add_problem_options(construct, c);
  construct->add_option("--hmax", c.hmax, "last stage")->check(CLI::PositiveNumber);
  construct->add_option("--first-h", c.first_h, "first stage")->check(CLI::PositiveNumber);
  construct->add_option("--nu0", c.nu0, "velocity radius override");
  construct->add_option("--window", c.window, "range window lo hi")->expected(2);

  auto* gap = app.add_subcommand("gap", "estimate the Lipschitz infimum");
  add_problem_options(gap, c);
  gap->add_option("--bounds", c.bounds, "slope bounds");
  gap->add_option("--knots", c.knots, "knot counts");
  gap->add_option("--restarts", c.restarts, "starts per sweep cell");

  auto* demo = app.add_subcommand("demo", "canned reproductions: mania, alberti, alberti2");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--seed", c.seed, "random seed");
  demo->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  demo->add_option("--restarts", c.restarts, "starts for the searches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*check) return cmd_check(c);
    if (*construct) return cmd_construct(c);
    if (*gap) return cmd_gap(c);
    if (*demo) return cmd_demo(c, demo_name);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kAssertionFailure;
  }
  return kConfigError;
}
