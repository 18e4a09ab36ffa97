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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lavgap/conditions.hpp"
#include "lavgap/construction.hpp"
#include "lavgap/extended_value.hpp"
#include "lavgap/gapsearch.hpp"
#include "lavgap/interval.hpp"
#include "lavgap/reparametrization.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

using nlohmann::json;

// Shortest round-trip decimal form; "inf" for +inf.
std::string format_number(double v);
// Accepts the output of format_number. Throws std::invalid_argument.
double parse_number(const std::string& s);

// Finite values as numbers, +inf as the string "inf".
json to_json(ExtendedValue v);
ExtendedValue extended_from_json(const json& j);

// Piecewise-linear trajectories are stored by knots and values. Closed-form
// trajectories are stored by name plus samples on a graded grid; reading
// restores a named fixture and falls back to the samples otherwise.
json to_json(const Trajectory& y, std::size_t sample_cells = 1024);
Trajectory trajectory_from_json(const json& j);

json to_json(const IntervalUnion& u);
IntervalUnion interval_union_from_json(const json& j);

json to_json(const Reparametrization& phi);
Reparametrization reparametrization_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);
json to_json(const ConditionReport& r);
ConditionReport condition_report_from_json(const json& j);
json to_json(const GateResult& g);

json to_json(const ConstructionDiagnostics& d);
ConstructionDiagnostics diagnostics_from_json(const json& j);
// Trajectories are included only when `with_trajectories` is set.
json to_json(const ConstructionReport& r, bool with_trajectories = false);

json to_json(const SweepRow& row);
SweepRow sweep_row_from_json(const json& j);
json to_json(const GapEstimate& g);
GapEstimate gap_estimate_from_json(const json& j);

// CSV with a header row; cells never contain separators.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws std::out_of_range for an unknown column.
  std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& os, const CsvTable& table);
// Throws std::invalid_argument on ragged rows or an empty document.
CsvTable read_csv(std::istream& is);

CsvTable sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_rows_from_csv(const CsvTable& table);

// One row per stage: h, |A_h|, |Sigma_h|, endpoint residuals, Lipschitz
// constant, Sobolev distance, energy and the remaining diagnostics.
CsvTable construction_csv(const ConstructionSequence& seq);
std::vector<std::pair<int, ConstructionDiagnostics>> construction_rows_from_csv(
    const CsvTable& table);

// Long format (series, x, value) for plotting.
CsvTable construction_long_csv(const ConstructionSequence& seq);

}  // namespace lavgap
