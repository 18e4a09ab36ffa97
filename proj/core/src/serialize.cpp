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

#include "lavgap/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lavgap/fixtures.hpp"

namespace lavgap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

json number_or_inf(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (std::isinf(v)) return "-inf";
  return v;
}

double number_from(const json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

json point_map(const std::map<std::string, double>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = number_or_inf(v);
  return j;
}

std::map<std::string, double> point_map_from(const json& j) {
  std::map<std::string, double> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = number_from(it.value());
  return m;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

double parse_number(const std::string& s) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw std::invalid_argument("parse_number: not a number: '" + s + "'");
  }
  return v;
}

json to_json(ExtendedValue v) { return number_or_inf(v.to_double()); }

ExtendedValue extended_from_json(const json& j) {
  return ExtendedValue::from_double(number_from(j));
}

json to_json(const Trajectory& y, std::size_t sample_cells) {
  json j;
  j["dimension"] = y.dimension();
  j["interval"] = {y.interval().t(), y.interval().T()};
  if (y.is_piecewise_linear()) {
    j["kind"] = y.kind() == Trajectory::Kind::sampled ? "sampled" : "piecewise_linear";
    j["knots"] = to_vector(y.knots());
    j["values"] = to_vector(y.knot_values());
    return j;
  }
  j["kind"] = "closed_form";
  j["name"] = y.name();
  j["breakpoints"] = to_vector(y.breakpoints());
  const Grid g = Grid::graded(y.interval(), sample_cells, 40).merged(y.breakpoints());
  std::vector<double> values(g.size() * y.dimension());
  for (std::size_t k = 0; k < g.size(); ++k) {
    y.value(g[k], std::span<double>(values.data() + k * y.dimension(), y.dimension()));
  }
  j["knots"] = to_vector(g.nodes());
  j["values"] = values;
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::size_t n = j.at("dimension").get<std::size_t>();
  auto knots = j.at("knots").get<std::vector<double>>();
  auto values = j.at("values").get<std::vector<double>>();
  if (kind == "closed_form") {
    const std::string name = j.value("name", std::string{});
    const auto all = fixtures::names();
    if (std::find(all.begin(), all.end(), name) != all.end()) {
      Trajectory f = fixtures::by_name(name);
      bool same = f.dimension() == n && f.interval().t() == knots.front() &&
                  f.interval().T() == knots.back();
      for (std::size_t k = 0; same && k < knots.size(); ++k) {
        same = std::abs(f.value1(knots[k]) - values[k]) <= 1e-12 * std::max(1.0, std::abs(values[k]));
      }
      if (same) return f;
    }
  }
  if (kind != "closed_form" && kind != "piecewise_linear" && kind != "sampled") {
    throw std::invalid_argument("trajectory_from_json: unknown kind '" + kind + "'");
  }
  if (kind == "sampled") return Trajectory::sampled(Grid(std::move(knots)), std::move(values), n);
  return Trajectory::piecewise_linear(std::move(knots), std::move(values), n);
}

json to_json(const IntervalUnion& u) {
  json j = json::array();
  for (const Component& c : u.components()) j.push_back({c.a, c.b});
  return j;
}

IntervalUnion interval_union_from_json(const json& j) {
  std::vector<Component> c;
  for (const auto& e : j) c.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return IntervalUnion(std::move(c));
}

json to_json(const Reparametrization& phi) {
  return {{"breakpoints", to_vector(phi.breakpoints())},
          {"values", to_vector(phi.values())},
          {"anchor", phi.anchor() == Reparametrization::Anchor::left ? "left" : "right"}};
}

Reparametrization reparametrization_from_json(const json& j) {
  const std::string anchor = j.value("anchor", std::string("left"));
  return Reparametrization(j.at("breakpoints").get<std::vector<double>>(),
                           j.at("values").get<std::vector<double>>(),
                           anchor == "right" ? Reparametrization::Anchor::right
                                             : Reparametrization::Anchor::left);
}

json to_json(const Witness& w) {
  json j{{"s", w.s}, {"y", w.y}, {"u", w.u}, {"value", to_json(w.value)}, {"detail", w.detail}};
  if (w.s1) j["s1"] = *w.s1;
  if (w.s2) j["s2"] = *w.s2;
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.s = j.at("s").get<double>();
  w.y = j.at("y").get<std::vector<double>>();
  w.u = j.at("u").get<std::vector<double>>();
  w.value = extended_from_json(j.at("value"));
  w.detail = j.value("detail", std::string{});
  if (j.contains("s1")) w.s1 = j["s1"].get<double>();
  if (j.contains("s2")) w.s2 = j["s2"].get<double>();
  return w;
}

json to_json(const ConditionReport& r) {
  json j{{"condition", to_string(r.condition)},
         {"verdict", to_string(r.verdict)},
         {"constants", point_map(r.constants)},
         {"sampling", point_map(r.sampling)},
         {"detail", r.detail}};
  json profile = json::array();
  for (auto [x, v] : r.profile) profile.push_back({number_or_inf(x), number_or_inf(v)});
  j["profile"] = profile;
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.window) j["window"] = {r.window->a, r.window->b};
  if (!r.window_witnesses.empty()) {
    json ws = json::array();
    for (const auto& w : r.window_witnesses) ws.push_back(to_json(w));
    j["window_witnesses"] = ws;
  }
  return j;
}

ConditionReport condition_report_from_json(const json& j) {
  ConditionReport r;
  r.condition = condition_from_string(j.at("condition").get<std::string>());
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.constants = point_map_from(j.at("constants"));
  r.sampling = point_map_from(j.value("sampling", json::object()));
  r.detail = j.value("detail", std::string{});
  for (const auto& p : j.value("profile", json::array())) {
    r.profile.emplace_back(number_from(p.at(0)), number_from(p.at(1)));
  }
  if (j.contains("witness")) r.witness = witness_from_json(j["witness"]);
  if (j.contains("window")) r.window = Component{j["window"][0], j["window"][1]};
  for (const auto& w : j.value("window_witnesses", json::array())) {
    r.window_witnesses.push_back(witness_from_json(w));
  }
  return r;
}

json to_json(const GateResult& g) {
  return {{"claim1", g.claim1},           {"claim2", g.claim2},
          {"applicable", g.applicable},   {"missing", g.missing},
          {"variant", to_string(g.variant)}, {"energy", to_json(g.energy)},
          {"lambda_energy", to_json(g.lambda_energy)}};
}

#define LAVGAP_DIAGNOSTIC_FIELDS(X)                                                            \
  X(measure_A_h) X(budget) X(level) X(measure_phi_A_h) X(beta_sum) X(image_bound)               \
  X(measure_Sigma_h) X(excess) X(endpoint_residual_left) X(endpoint_residual_right)            \
  X(free_end_drift) X(mass_balance_residual) X(inverse_residual) X(lipschitz_constant_y_h)     \
  X(slope_bound) X(sigma_slope_bound)

json to_json(const ConstructionDiagnostics& d) {
  json j;
#define X(f) j[#f] = number_or_inf(d.f);
  LAVGAP_DIAGNOSTIC_FIELDS(X)
#undef X
  j["slope_certificate"] = d.slope_certificate;
  j["sobolev_distance_to_y"] = to_json(d.sobolev_distance_to_y);
  j["energy_y_h"] = to_json(d.energy_y_h);
  return j;
}

ConstructionDiagnostics diagnostics_from_json(const json& j) {
  ConstructionDiagnostics d;
#define X(f) d.f = number_from(j.at(#f));
  LAVGAP_DIAGNOSTIC_FIELDS(X)
#undef X
  d.slope_certificate = j.at("slope_certificate").get<bool>();
  d.sobolev_distance_to_y = extended_from_json(j.at("sobolev_distance_to_y"));
  d.energy_y_h = extended_from_json(j.at("energy_y_h"));
  return d;
}

json to_json(const ConstructionReport& r, bool with_trajectories) {
  json j{{"h", r.h},
         {"variant", to_string(r.variant)},
         {"A_h", to_json(r.A_h)},
         {"Sigma_h", to_json(r.Sigma_h)},
         {"phi_h", to_json(r.phi_h)},
         {"diagnostics", to_json(r.diagnostics)}};
  if (with_trajectories) {
    j["z_h"] = to_json(r.z_h);
    j["y_h"] = to_json(r.y_h);
  }
  return j;
}

json to_json(const SweepRow& row) {
  return {{"M", row.slope_bound},
          {"knots", row.knots},
          {"best_value", to_json(row.best_value)},
          {"evaluations", row.evaluations},
          {"infinite_restarts", row.infinite_restarts},
          {"restarts", row.restarts}};
}

SweepRow sweep_row_from_json(const json& j) {
  SweepRow r;
  r.slope_bound = j.at("M").get<double>();
  r.knots = j.at("knots").get<std::size_t>();
  r.best_value = extended_from_json(j.at("best_value"));
  r.evaluations = j.at("evaluations").get<std::size_t>();
  r.infinite_restarts = j.value("infinite_restarts", std::size_t{0});
  r.restarts = j.value("restarts", std::size_t{0});
  return r;
}

json to_json(const GapEstimate& g) {
  json rows = json::array();
  for (const auto& r : g.lip_inf_per_bound) rows.push_back(to_json(r));
  return {{"F_candidate", to_json(g.F_candidate)},
          {"lip_inf", to_json(g.lip_inf)},
          {"margin", g.margin},
          {"verdict", to_string(g.verdict)},
          {"lip_inf_per_bound", rows},
          {"best_trajectory", to_json(g.best_trajectory)},
          {"detail", g.detail}};
}

GapEstimate gap_estimate_from_json(const json& j) {
  GapEstimate g;
  g.F_candidate = extended_from_json(j.at("F_candidate"));
  g.lip_inf = extended_from_json(j.at("lip_inf"));
  g.margin = j.at("margin").get<double>();
  g.verdict = gap_verdict_from_string(j.at("verdict").get<std::string>());
  for (const auto& r : j.at("lip_inf_per_bound")) g.lip_inf_per_bound.push_back(sweep_row_from_json(r));
  g.best_trajectory = trajectory_from_json(j.at("best_trajectory"));
  g.detail = j.value("detail", std::string{});
  return g;
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("CsvTable: no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

void write_csv(std::ostream& os, const CsvTable& table) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find_first_of(",\n\"") != std::string::npos) {
        throw std::invalid_argument("write_csv: cell contains a separator");
      }
      os << (i ? "," : "") << cells[i];
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

CsvTable read_csv(std::istream& is) {
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      t.header = split(line);
      have_header = true;
      continue;
    }
    auto row = split(line);
    if (row.size() != t.header.size()) throw std::invalid_argument("read_csv: ragged row");
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::invalid_argument("read_csv: empty document");
  return t;
}

CsvTable sweep_csv(const std::vector<SweepRow>& rows) {
  CsvTable t;
  t.header = {"M", "knots", "best_value", "evaluations", "infinite_restarts", "restarts"};
  for (const auto& r : rows) {
    t.rows.push_back({format_number(r.slope_bound), std::to_string(r.knots),
                      format_number(r.best_value.to_double()), std::to_string(r.evaluations),
                      std::to_string(r.infinite_restarts), std::to_string(r.restarts)});
  }
  return t;
}

std::vector<SweepRow> sweep_rows_from_csv(const CsvTable& t) {
  std::vector<SweepRow> out;
  for (const auto& r : t.rows) {
    SweepRow s;
    s.slope_bound = parse_number(r[t.column("M")]);
    s.knots = std::stoul(r[t.column("knots")]);
    s.best_value = ExtendedValue::from_double(parse_number(r[t.column("best_value")]));
    s.evaluations = std::stoul(r[t.column("evaluations")]);
    s.infinite_restarts = std::stoul(r[t.column("infinite_restarts")]);
    s.restarts = std::stoul(r[t.column("restarts")]);
    out.push_back(s);
  }
  return out;
}

CsvTable construction_csv(const ConstructionSequence& seq) {
  CsvTable t;
  t.header = {"h"};
#define X(f) t.header.push_back(#f);
  LAVGAP_DIAGNOSTIC_FIELDS(X)
#undef X
  t.header.insert(t.header.end(), {"slope_certificate", "sobolev_distance_to_y", "energy_y_h"});
  for (const auto& r : seq.reports) {
    const auto& d = r.diagnostics;
    std::vector<std::string> row{std::to_string(r.h)};
#define X(f) row.push_back(format_number(d.f));
    LAVGAP_DIAGNOSTIC_FIELDS(X)
#undef X
    row.push_back(d.slope_certificate ? "1" : "0");
    row.push_back(format_number(d.sobolev_distance_to_y.to_double()));
    row.push_back(format_number(d.energy_y_h.to_double()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::pair<int, ConstructionDiagnostics>> construction_rows_from_csv(
    const CsvTable& t) {
  std::vector<std::pair<int, ConstructionDiagnostics>> out;
  for (const auto& r : t.rows) {
    ConstructionDiagnostics d;
#define X(f) d.f = parse_number(r[t.column(#f)]);
    LAVGAP_DIAGNOSTIC_FIELDS(X)
#undef X
    d.slope_certificate = r[t.column("slope_certificate")] == "1";
    d.sobolev_distance_to_y =
        ExtendedValue::from_double(parse_number(r[t.column("sobolev_distance_to_y")]));
    d.energy_y_h = ExtendedValue::from_double(parse_number(r[t.column("energy_y_h")]));
    out.emplace_back(std::stoi(r[t.column("h")]), d);
  }
  return out;
}

CsvTable construction_long_csv(const ConstructionSequence& seq) {
  CsvTable t;
  t.header = {"series", "h", "value"};
  for (const auto& r : seq.reports) {
    const auto& d = r.diagnostics;
    const std::string h = std::to_string(r.h);
    t.rows.push_back({"measure_A_h", h, format_number(d.measure_A_h)});
    t.rows.push_back({"measure_Sigma_h", h, format_number(d.measure_Sigma_h)});
    t.rows.push_back({"lipschitz_constant_y_h", h, format_number(d.lipschitz_constant_y_h)});
    t.rows.push_back({"sobolev_distance_to_y", h, format_number(d.sobolev_distance_to_y.to_double())});
    t.rows.push_back({"energy_y_h", h, format_number(d.energy_y_h.to_double())});
  }
  return t;
}

}  // namespace lavgap
