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

#include "lavgap/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lavgap {

Interval::Interval(double t, double T) : t_(t), T_(T) {
  if (!std::isfinite(t) || !std::isfinite(T) || !(t < T)) {
    throw std::invalid_argument("Interval: need finite t < T, got [" + std::to_string(t) + ", " +
                                std::to_string(T) + "]");
  }
}

double Interval::clamp(double s) const { return std::clamp(s, t_, T_); }

IntervalUnion::IntervalUnion(std::vector<Component> components)
    : components_(std::move(components)) {
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& c = components_[k];
    if (!(c.a < c.b)) throw std::invalid_argument("IntervalUnion: empty component");
    if (k > 0 && components_[k - 1].b > c.a) {
      throw std::invalid_argument("IntervalUnion: components overlap or are unordered");
    }
  }
}

IntervalUnion IntervalUnion::normalized(std::vector<Component> pieces) {
  std::erase_if(pieces, [](const Component& c) { return !(c.a < c.b); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Component& x, const Component& y) { return x.a < y.a; });
  std::vector<Component> merged;
  for (const auto& c : pieces) {
    if (!merged.empty() && c.a <= merged.back().b) {
      merged.back().b = std::max(merged.back().b, c.b);
    } else {
      merged.push_back(c);
    }
  }
  return IntervalUnion(std::move(merged));
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.length();
  return m;
}

long IntervalUnion::find(double s) const {
  auto it = std::upper_bound(components_.begin(), components_.end(), s,
                             [](double v, const Component& c) { return v < c.b; });
  if (it == components_.end() || !(it->a < s && s < it->b)) return -1;
  return static_cast<long>(it - components_.begin());
}

bool IntervalUnion::contains(double s) const { return find(s) >= 0; }

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Component> all(components_.begin(), components_.end());
  all.insert(all.end(), other.components_.begin(), other.components_.end());
  return normalized(std::move(all));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& other) const {
  std::vector<Component> out;
  for (auto c : components_) {
    double lo = c.a;
    for (const auto& o : other.components_) {
      if (o.b <= lo) continue;
      if (o.a >= c.b) break;
      if (o.a > lo) out.push_back({lo, o.a});
      lo = std::max(lo, o.b);
      if (lo >= c.b) break;
    }
    if (lo < c.b) out.push_back({lo, c.b});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Component> out;
  for (const auto& c : components_) {
    for (const auto& o : other.components_) {
      double lo = std::max(c.a, o.a);
      double hi = std::min(c.b, o.b);
      if (lo < hi) out.push_back({lo, hi});
    }
  }
  return normalized(std::move(out));
}

IntervalUnion IntervalUnion::clipped(double lo, double hi) const {
  return intersect(IntervalUnion({{lo, hi}}));
}

}  // namespace lavgap
