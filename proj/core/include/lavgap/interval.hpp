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

#include <span>
#include <utility>
#include <vector>

namespace lavgap {

// Closed bounded interval [t, T] with t < T.
class Interval {
 public:
  // Throws std::invalid_argument unless t < T and both are finite.
  Interval(double t, double T);

  double t() const { return t_; }
  double T() const { return T_; }
  double length() const { return T_ - t_; }
  bool contains(double s) const { return s >= t_ && s <= T_; }
  double clamp(double s) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double t_;
  double T_;
};

// Open subinterval ]a, b[ of the real line.
struct Component {
  double a;
  double b;
  double length() const { return b - a; }
  friend bool operator==(const Component&, const Component&) = default;
};

// Finite ordered union of disjoint open intervals.
//
// Components satisfy a_k < b_k and b_k <= a_{k+1}. Touching components are
// kept separate only when constructed that way; normalized() merges them.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  // Throws std::invalid_argument if the components are unordered, empty or
  // overlapping.
  explicit IntervalUnion(std::vector<Component> components);

  // Sorts, drops empty pieces and merges overlapping or touching ones.
  static IntervalUnion normalized(std::vector<Component> pieces);

  std::span<const Component> components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  double measure() const;
  // Open-set membership.
  bool contains(double s) const;
  // Index of the component containing s, or -1.
  long find(double s) const;

  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion subtract(const IntervalUnion& other) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion clipped(double lo, double hi) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Component> components_;
};

}  // namespace lavgap
