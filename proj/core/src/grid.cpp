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

#include "lavgap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lavgap {

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("Grid: need at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw std::invalid_argument("Grid: non-finite node");
    if (i > 0 && !(nodes_[i - 1] < nodes_[i])) {
      throw std::invalid_argument("Grid: nodes must be strictly increasing");
    }
  }
}

Grid Grid::uniform(const Interval& I, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("Grid::uniform: zero cells");
  std::vector<double> nodes(cells + 1);
  const double h = I.length() / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) nodes[i] = I.t() + h * static_cast<double>(i);
  nodes.back() = I.T();
  return Grid(std::move(nodes));
}

Grid Grid::graded(const Interval& I, std::size_t cells, int depth) {
  Grid base = uniform(I, cells);
  const double h = I.length() / static_cast<double>(cells);
  std::vector<double> extra;
  double w = h;
  for (int j = 0; j < depth; ++j) {
    w *= 0.5;
    const double left = I.t() + w;
    const double right = I.T() - w;
    if (left > I.t()) extra.push_back(left);
    if (right < I.T()) extra.push_back(right);
  }
  return base.merged(extra);
}

Grid Grid::merged(std::span<const double> points, double min_gap) const {
  std::vector<double> all(nodes_.begin(), nodes_.end());
  for (double p : points) {
    if (std::isfinite(p) && p > nodes_.front() && p < nodes_.back()) all.push_back(p);
  }
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  out.reserve(all.size());
  for (double v : all) {
    if (out.empty() || v - out.back() > min_gap) {
      if (out.empty() || v > out.back()) out.push_back(v);
    }
  }
  if (out.back() != nodes_.back()) {
    if (nodes_.back() - out.back() <= min_gap && out.size() > 1) out.back() = nodes_.back();
    else out.push_back(nodes_.back());
  }
  return Grid(std::move(out));
}

std::size_t Grid::locate(double s) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
  if (it == nodes_.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(k, cells() - 1);
}

}  // namespace lavgap
