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

// Reads the files written by `construct --out` and `gap --out` back through
// the library readers.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lavgap/serialize.hpp"

using namespace lavgap;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: lavgap_reparse CONSTRUCT_DIR GAP_DIR\n";
    return 1;
  }
  const fs::path construct = argv[1];
  const fs::path gap = argv[2];
  try {
    std::ifstream c(construct / "construction.csv");
    const auto rows = construction_rows_from_csv(read_csv(c));
    std::ifstream cl(construct / "construction_long.csv");
    const auto longform = read_csv(cl);
    std::ifstream cj(construct / "construction.json");
    const auto doc = json::parse(cj);
    for (const auto& r : doc.at("reports")) diagnostics_from_json(r.at("diagnostics"));
    if (rows.size() != doc.at("reports").size() || longform.rows.empty()) {
      std::cerr << "construction outputs disagree\n";
      return 2;
    }

    std::ifstream s(gap / "sweep.csv");
    const auto sweep = sweep_rows_from_csv(read_csv(s));
    std::ifstream gj(gap / "gap.json");
    const auto est = gap_estimate_from_json(json::parse(gj));
    if (sweep.size() != est.lip_inf_per_bound.size()) {
      std::cerr << "gap outputs disagree\n";
      return 2;
    }
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      if (!(sweep[i].best_value == est.lip_inf_per_bound[i].best_value)) {
        std::cerr << "sweep row " << i << " differs\n";
        return 2;
      }
    }
    std::cout << rows.size() << " construction rows, " << sweep.size() << " sweep rows reparsed\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
