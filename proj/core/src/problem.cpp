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

#include "lavgap/problem.hpp"

#include <fstream>
#include <stdexcept>

namespace lavgap {

namespace {

std::vector<double> vector_field(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw std::invalid_argument(std::string("problem: non-numeric ") + what);
      out.push_back(x.get<double>());
    }
    return out;
  }
  throw std::invalid_argument(std::string("problem: bad ") + what);
}

}  // namespace

Problem parse_problem(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("problem: document must be an object");
  Problem pr;
  if (!doc.contains("lagrangian")) throw std::invalid_argument("problem: missing 'lagrangian'");
  const auto& lj = doc.at("lagrangian");
  if (lj.is_string()) {
    pr.lagrangian_name = lj.get<std::string>();
  } else if (lj.is_object() && lj.contains("name") && lj.at("name").is_string()) {
    pr.lagrangian_name = lj.at("name").get<std::string>();
    if (lj.contains("params")) {
      if (!lj.at("params").is_object()) throw std::invalid_argument("problem: params must be an object");
      for (const auto& [k, v] : lj.at("params").items()) {
        if (!v.is_number()) throw std::invalid_argument("problem: param '" + k + "' not numeric");
        pr.params[k] = v.get<double>();
      }
    }
  } else {
    throw std::invalid_argument("problem: 'lagrangian' needs a name");
  }
  if (doc.contains("interval")) {
    const auto iv = vector_field(doc.at("interval"), "interval");
    if (iv.size() != 2) throw std::invalid_argument("problem: interval must be [t, T]");
    pr.params["t"] = iv[0];
    pr.params["T"] = iv[1];
  }
  if (doc.contains("p")) {
    if (!doc.at("p").is_number()) throw std::invalid_argument("problem: p must be numeric");
    pr.params["p"] = doc.at("p").get<double>();
  }
  Params build_params = pr.params;
  // Only the power family takes p as a parameter; elsewhere it overrides the
  // Sobolev exponent after construction.
  double p_override = 0.0;
  if (pr.lagrangian_name != "power" && build_params.count("p")) {
    p_override = build_params.at("p");
    build_params.erase("p");
  }
  pr.lag = builtin(pr.lagrangian_name, build_params);
  if (p_override != 0.0) {
    if (!(p_override >= 1.0)) throw std::invalid_argument("problem: p must be >= 1");
    pr.lag.p = p_override;
  }

  const std::size_t n = pr.lag.dimension;
  if (doc.contains("boundary")) {
    const auto& bj = doc.at("boundary");
    if (!bj.is_object() || !bj.contains("kind") || !bj.at("kind").is_string()) {
      throw std::invalid_argument("problem: boundary needs a kind");
    }
    pr.boundary.kind = boundary_kind_from_string(bj.at("kind").get<std::string>());
    if (pr.boundary.pins_left()) {
      if (!bj.contains("X")) throw std::invalid_argument("problem: boundary kind needs X");
      pr.boundary.X = vector_field(bj.at("X"), "X");
    }
    if (pr.boundary.pins_right()) {
      if (!bj.contains("Y")) throw std::invalid_argument("problem: boundary kind needs Y");
      pr.boundary.Y = vector_field(bj.at("Y"), "Y");
    }
  } else {
    pr.boundary = BoundaryData::both(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
  }
  pr.boundary.validate(n);
  return pr;
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem: cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("problem: " + path.string() + ": " + e.what());
  }
  return parse_problem(doc);
}

nlohmann::json problem_to_json(const Problem& problem) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : problem.params) {
    if (k != "t" && k != "T" && k != "p") params[k] = v;
  }
  nlohmann::json doc;
  doc["lagrangian"] = {{"name", problem.lagrangian_name}, {"params", params}};
  doc["interval"] = {problem.lag.interval.t(), problem.lag.interval.T()};
  doc["p"] = problem.lag.p;
  nlohmann::json b;
  b["kind"] = to_string(problem.boundary.kind);
  if (problem.boundary.pins_left()) b["X"] = problem.boundary.X;
  if (problem.boundary.pins_right()) b["Y"] = problem.boundary.Y;
  doc["boundary"] = b;
  return doc;
}

}  // namespace lavgap
