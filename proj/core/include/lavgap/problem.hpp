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

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "lavgap/lagrangian.hpp"

namespace lavgap {

// A built-in Lagrangian with its parameters and boundary data.
struct Problem {
  std::string lagrangian_name;
  Params params;
  ProductLagrangian lag;
  BoundaryData boundary;
};

// Parses {lagrangian: {name, params}, interval: [t, T], p,
//         boundary: {kind, X, Y}}.
// Scalar X or Y are accepted for one-dimensional problems. Missing boundary
// data defaults to both ends pinned at 0 and 1. Throws std::invalid_argument
// on malformed documents.
Problem parse_problem(const nlohmann::json& doc);
Problem load_problem(const std::filesystem::path& path);
nlohmann::json problem_to_json(const Problem& problem);

}  // namespace lavgap
