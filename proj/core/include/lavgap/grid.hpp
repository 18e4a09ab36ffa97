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

#include <cstddef>
#include <span>
#include <vector>

#include "lavgap/interval.hpp"

namespace lavgap {

// Strictly increasing nodes from t to T.
class Grid {
 public:
  // The two-node grid {0, 1}.
  Grid() : nodes_{0.0, 1.0} {}
  // Throws std::invalid_argument unless there are at least two strictly
  // increasing finite nodes.
  explicit Grid(std::vector<double> nodes);

  // n equal cells.
  static Grid uniform(const Interval& I, std::size_t cells);
  // Uniform cells plus `depth` geometric halvings toward each end.
  static Grid graded(const Interval& I, std::size_t cells, int depth);

  // Inserts the given points (those strictly inside the range) and drops
  // near-duplicates closer than `min_gap`.
  Grid merged(std::span<const double> points, double min_gap = 0.0) const;

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t cells() const { return nodes_.size() - 1; }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  Interval interval() const { return Interval(nodes_.front(), nodes_.back()); }
  // Index k with nodes[k] <= s < nodes[k+1]; the last cell for s == back().
  std::size_t locate(double s) const;

 private:
  std::vector<double> nodes_;
};

}  // namespace lavgap
