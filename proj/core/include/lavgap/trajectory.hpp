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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lavgap/grid.hpp"
#include "lavgap/interval.hpp"

namespace lavgap {

using VectorFn = std::function<void(double s, std::span<double> out)>;
using ScalarFn = std::function<double(double s)>;

// An absolutely continuous map I -> R^n with evaluable value and a.e.
// derivative. Cheap to copy; the representation is shared and immutable.
//
// Piecewise-linear and sampled trajectories interpolate linearly between
// knots and report the per-cell difference quotient as derivative (the
// right cell at an interior knot, the last cell at T).
class Trajectory {
 public:
  enum class Kind { closed_form, sampled, piecewise_linear };

  // The zero function on [0, 1].
  Trajectory();

  // `breakpoints` lists points where the derivative may jump or blow up;
  // quadrature uses them as cell boundaries.
  static Trajectory closed_form(const Interval& I, std::size_t dimension, VectorFn value,
                                VectorFn derivative, std::vector<double> breakpoints = {},
                                std::string name = {});
  static Trajectory scalar(const Interval& I, ScalarFn value, ScalarFn derivative,
                           std::vector<double> breakpoints = {}, std::string name = {});
  // `values` is row-major: knots.size() rows of `dimension` entries.
  static Trajectory piecewise_linear(std::vector<double> knots, std::vector<double> values,
                                     std::size_t dimension = 1);
  static Trajectory sampled(const Grid& grid, std::vector<double> values,
                            std::size_t dimension = 1);

  Kind kind() const;
  const Interval& interval() const;
  std::size_t dimension() const;
  const std::string& name() const;
  bool is_piecewise_linear() const { return kind() != Kind::closed_form; }

  // Throws std::out_of_range if s is outside I by more than a round-off
  // margin; slightly outside points are clamped.
  void value(double s, std::span<double> out) const;
  void derivative(double s, std::span<double> out) const;
  std::vector<double> value(double s) const;
  std::vector<double> derivative(double s) const;
  // Scalar shortcuts; throw std::logic_error if dimension() != 1.
  double value1(double s) const;
  double derivative1(double s) const;

  std::span<const double> breakpoints() const;
  // Knots and row-major knot values; empty for closed-form trajectories.
  std::span<const double> knots() const;
  std::span<const double> knot_values() const;

  // Max segment slope magnitude (Euclidean). Throws std::logic_error for
  // closed-form trajectories.
  double lipschitz_constant() const;

 private:
  struct Impl;
  explicit Trajectory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Largest difference quotient |y(b)-y(a)|/(b-a) over consecutive grid nodes.
double lipschitz_estimate(const Trajectory& y, const Grid& g);

// Samples y at the grid nodes into a piecewise-linear trajectory.
Trajectory interpolate(const Trajectory& y, const Grid& g);

}  // namespace lavgap
