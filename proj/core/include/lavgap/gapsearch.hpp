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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lavgap/extended_value.hpp"
#include "lavgap/interval.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

class InfeasibleSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Piecewise-linear trajectories on knot_count equispaced knots with slope
// at most slope_bound. Vector trajectories bound each component's slope by
// slope_bound / sqrt(n), which keeps the Euclidean slope within the bound.
struct SearchSpace {
  Interval interval{0.0, 1.0};
  std::size_t dimension = 1;
  std::size_t knot_count = 32;
  double slope_bound = 1.0;
  BoundaryData boundary;
  // Range clamp for the value at an unpinned end (scalar problems).
  std::optional<Component> free_end_range;

  // Throws InfeasibleSpaceError if the pinned values cannot be joined
  // within the slope bound, std::invalid_argument on malformed fields.
  void validate() const;
  Grid knots() const;
  double component_bound() const;
};

SearchSpace make_space(const ProductLagrangian& lag, const BoundaryData& boundary,
                       std::size_t knot_count, double slope_bound);

// Samples y at the knots and clips it into the space.
Trajectory project_onto(const Trajectory& y, const SearchSpace& space);

// Pinned ends exact and slopes within slope_bound * (1 + 1e-12).
bool is_feasible(const Trajectory& y, const SearchSpace& space);

struct SearchOptions {
  // Total starts: the straight line, the projected extra starts, then
  // random perturbations of the line.
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  int workers = 1;
  std::size_t max_sweeps = 2000;
  // Descent stops once every step is below min_step * slope_bound * cell.
  double min_step = 1e-9;
  // Random starts with infinite energy are redrawn up to this many times.
  std::size_t redraw_budget = 8;
  std::vector<Trajectory> starts;
  // Used for the final re-evaluation of the best trajectory.
  QuadratureSpec quad;
};

struct RestartRecord {
  ExtendedValue start_value;
  ExtendedValue final_value;
  std::size_t sweeps = 0;
};

struct SearchResult {
  // energy() of the best trajectory.
  ExtendedValue value;
  Trajectory trajectory;
  std::size_t evaluations = 0;
  std::vector<RestartRecord> restarts;
};

// Multi-start coordinate descent with per-knot shrinking steps over the
// knot values, ranked by (number of cells with infinite energy, finite
// remainder). Throws InfeasibleSpaceError for an infeasible space.
SearchResult minimize_lipschitz(const ProductLagrangian& lag, const SearchSpace& space,
                                const SearchOptions& options = {});

enum class GapVerdict { gap_detected, no_gap_evidence, inconclusive };

std::string to_string(GapVerdict v);
GapVerdict gap_verdict_from_string(const std::string& s);

struct SweepRow {
  double slope_bound = 0.0;
  std::size_t knots = 0;
  ExtendedValue best_value;
  std::size_t evaluations = 0;
  // Starts whose descent still ended at +inf.
  std::size_t infinite_restarts = 0;
  std::size_t restarts = 0;
};

struct GapOptions {
  std::vector<double> bounds{2.0, 4.0, 8.0, 16.0, 32.0};
  std::vector<std::size_t> knots{32, 128};
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  int workers = 1;
  // The margin is margin_factor * max(1, F_candidate).
  double margin_factor = 1e-3;
  std::size_t max_sweeps = 2000;
  QuadratureSpec quad;
};

struct GapEstimate {
  ExtendedValue F_candidate;
  std::vector<SweepRow> lip_inf_per_bound;
  ExtendedValue lip_inf;
  double margin = 0.0;
  GapVerdict verdict = GapVerdict::inconclusive;
  Trajectory best_trajectory;
  std::string detail;
};

// Sweeps the (slope bound, knot count) grid in increasing order. Each cell
// is warm-started from the best trajectory of the previous bound and of the
// previous knot count, and from the projection of y.
GapEstimate gap_report(const ProductLagrangian& lag, const Trajectory& y,
                       const BoundaryData& boundary, const GapOptions& options = {});

}  // namespace lavgap
