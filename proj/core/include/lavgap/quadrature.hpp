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
#include <span>

#include "lavgap/extended_value.hpp"
#include "lavgap/interval.hpp"

namespace lavgap {

struct QuadratureSpec {
  int base_cells = 64;
  int max_refinement_levels = 12;
  double divergence_factor = 1.5;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  // Consecutive growth levels, or a raw sum above divergence_cap, that
  // declare the integral divergent.
  int divergence_run = 6;
  double divergence_cap = 1e12;
  // Consecutive levels whose increment stays above stall_ratio times the
  // previous one also count as divergence.
  double stall_ratio = 0.8;
  // Geometric halvings toward each end of the range at level k:
  // grading_base + grading_step * k.
  int grading_base = 8;
  int grading_step = 8;
  // Bisection depth used to decide whether an infinite sample is isolated.
  int infinite_depth = 24;
  // Interior points are graded like the ends only when there are at most
  // this many of them.
  std::size_t graded_point_limit = 32;
  int workers = 1;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// One integrand evaluation. `flagged` marks points of interest (the energy
// module uses it for a vanishing state factor).
struct Sample {
  double value = 0.0;
  bool infinite = false;
  bool flagged = false;
};

using Integrand = std::function<Sample(double s)>;

struct QuadratureResult {
  ExtendedValue value;
  std::size_t cells_used = 0;
  int levels = 0;
  bool converged = false;
  bool diverged = false;
  // Cells whose integrand stayed infinite under bisection.
  IntervalUnion infinite_cells;
  // Finest-level cells whose midpoint sample was flagged.
  IntervalUnion flagged_cells;
};

// Composite midpoint rule with dyadic refinement and Richardson
// extrapolation over [a, b]. The cells next to a and b are graded
// geometrically toward them, with more halvings at each level, so that
// integrable endpoint singularities converge and non-integrable ones grow
// visibly. Breakpoints inside ]a, b[ become cell boundaries; those also
// listed in `graded` are graded from both sides.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureSpec& spec,
                           std::span<const double> graded = {});

// Deterministic pairwise sum.
double pairwise_sum(std::span<const double> v);

}  // namespace lavgap
