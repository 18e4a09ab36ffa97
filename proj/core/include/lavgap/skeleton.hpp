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

#include <optional>
#include <stdexcept>
#include <vector>

#include "lavgap/grid.hpp"
#include "lavgap/interval.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Raised when the integral of |y'| diverges.
class NotW11Error : public std::runtime_error {
 public:
  NotW11Error() : std::runtime_error("not W^{1,1}: the derivative is not integrable") {}
};

enum class FreeEnd { none, left, right };

struct SkeletonOptions {
  // Working grid: uniform cells plus geometric halvings toward both ends,
  // merged with the trajectory's breakpoints.
  std::size_t working_cells = 2048;
  int grading_depth = 60;
  // The level is at least level_growth^h * ||y'||_1 / (T - t), so the
  // exceptional set shrinks much faster than the measure budget requires.
  double level_growth = 4.0;
  // A component of A_h touching this end is replaced by the constant equal
  // to y at the component's other end instead of the chord.
  FreeEnd free_end = FreeEnd::none;
  // Precomputed integral of |y'|; computed by quadrature when absent.
  std::optional<double> l1_derivative;
  QuadratureSpec quad;
};

struct Skeleton {
  int h = 0;
  // Equal to y off A, affine on each component of A.
  Trajectory z;
  IntervalUnion A;
  // Difference-quotient level defining A, and the measure budget.
  double level = 0.0;
  double budget = 0.0;
  double l1_derivative = 0.0;
  Grid working_grid;
  // Euclidean slope |z'| on each component of A.
  std::vector<double> component_slopes;
  // y(b_k) - y(a_k) magnitudes per component.
  std::vector<double> beta;
  // Largest difference quotient of y over working cells outside A.
  double ell = 0.0;
};

// The working grid used for skeletons of y.
Grid working_grid(const Trajectory& y, const SkeletonOptions& options = {});

// A_h is the union of working cells whose difference quotient exceeds the
// level; the level is the larger of the smallest one meeting
// |A_h| <= (T - t) / (2 (h + 1)) and the growth schedule. Throws
// NotW11Error if the derivative is not integrable and
// std::invalid_argument if h < 0.
Skeleton affine_skeleton(const Trajectory& y, int h, const SkeletonOptions& options = {});

// Skeleton for a prescribed level (no measure budget).
Skeleton affine_skeleton_at_level(const Trajectory& y, double level,
                                  const SkeletonOptions& options = {});

// z equal to y off A and affine (or constant on a free-end component) on
// its components. Piecewise linear when y is.
Trajectory skeleton_trajectory(const Trajectory& y, const IntervalUnion& A, FreeEnd free_end);

}  // namespace lavgap
