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
#include <string>
#include <vector>

#include "lavgap/energy.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/reparametrization.hpp"
#include "lavgap/skeleton.hpp"

namespace lavgap {

// initial pins y(t), final pins y(T), both pins the two ends.
enum class Variant { initial, final_endpoint, both };

Variant variant_for(const BoundaryData& boundary);
std::string to_string(Variant v);
// Accepts initial, final and both.
Variant variant_from_string(const std::string& s);

struct StageParams {
  // Velocity radius on which Lambda is bounded along the trajectory.
  double nu0 = 0.0;
  // Open window of range values on which Lambda is bounded for every
  // velocity radius; needed by the two-endpoint variant.
  std::optional<Component> U;
  // Reference skeleton index; 0 selects the smallest h with
  // |y^{-1}(U)| > 10 |A_h|.
  int hbar = 0;
  // Slope bound of y off A_hbar; 0 computes it on the working grid.
  double ell = 0.0;
};

struct ConstructionDiagnostics {
  double measure_A_h = 0.0;
  double budget = 0.0;
  double level = 0.0;
  double measure_phi_A_h = 0.0;
  double beta_sum = 0.0;
  // beta_sum / nu0 + |A_h|
  double image_bound = 0.0;
  double measure_Sigma_h = 0.0;
  // Integral over A_h of (max(|z'|/nu0, 1) - 1).
  double excess = 0.0;
  double endpoint_residual_left = 0.0;
  double endpoint_residual_right = 0.0;
  // |y_h - y| at the end the variant leaves free; 0 for the two-endpoint
  // variant.
  double free_end_drift = 0.0;
  // phi(T) - phi(t) - (T - t); for the two-endpoint variant the value before
  // phi(T) is snapped onto T.
  double mass_balance_residual = 0.0;
  // max |psi(phi(s)) - s| over equispaced points.
  double inverse_residual = 0.0;
  double lipschitz_constant_y_h = 0.0;
  // max(nu0, slope of y off A_h) and 2 * ell.
  double slope_bound = 0.0;
  double sigma_slope_bound = 0.0;
  bool slope_certificate = true;
  ExtendedValue sobolev_distance_to_y;
  ExtendedValue energy_y_h;
};

struct ConstructionReport {
  int h = 0;
  Variant variant = Variant::initial;
  Trajectory z_h;
  IntervalUnion A_h;
  IntervalUnion Sigma_h;
  Reparametrization phi_h;
  Reparametrization psi_h;
  Trajectory y_h;
  ConstructionDiagnostics diagnostics;
};

struct ConstructionOptions {
  SkeletonOptions skeleton;
  QuadratureSpec quad;
  // Replace the chord by a constant on a component of A_h that touches the
  // unpinned end (one-endpoint variants only).
  bool truncate_free_end = true;
  std::size_t inverse_check_points = 1000;
  // Cells used for the Sobolev distance quadrature.
  std::size_t distance_cells = 16;
  // First stage index; stages run for h = first_h..h_max.
  int first_h = 1;
  int workers = 1;
};

struct ConstructionSequence {
  Variant variant = Variant::initial;
  StageParams params;
  ExtendedValue energy_y;
  double preimage_measure = 0.0;
  std::vector<ConstructionReport> reports;
};

// Runs skeleton, phi, psi and y_h = z_h o psi_h for h = first_h..h_max.
// Throws std::invalid_argument if energy(lag, y) is infinite, nu0 <= 0 or U
// is missing for the two-endpoint variant, NotW11Error if y' is not
// integrable, and InsufficientRoomError (naming the smallest usable h) if
// the slowdown set does not fit.
ConstructionSequence construct_sequence(const ProductLagrangian& lag, const Trajectory& y,
                                        const BoundaryData& boundary, const StageParams& params,
                                        int h_max, const ConstructionOptions& options = {});

// Smallest h >= 1 (up to h_limit) whose slowdown set fits in y^{-1}(U)
// minus A_h and A_hbar, for the two-endpoint variant with the given
// parameters; 0 if there is none.
int smallest_usable_h(const Trajectory& y, const StageParams& params,
                      const ConstructionOptions& options = {}, int h_limit = 64);

// Smallest h with |y^{-1}(U)| > 10 |A_h| (searched up to h_limit), and the
// slope of y off A_h there. Throws InsufficientRoomError if none exists.
std::pair<int, double> choose_hbar(const Trajectory& y, const Component& U,
                                   const SkeletonOptions& options, int h_limit = 64);

struct SequenceTolerances {
  double endpoint = 1e-9;
  double inverse = 1e-9;
  double mass_balance = 1e-9;
  double sigma_relative = 1e-9;
  double measure_relative = 1e-12;
  // Convergence targets checked at the last stage.
  double final_distance = 0.05;
  double final_energy_relative = 0.05;
};

// Invariant failures, one message each; empty when every check passes.
std::vector<std::string> verify_sequence(const ConstructionSequence& seq, const Trajectory& y,
                                         const SequenceTolerances& tol = {});

}  // namespace lavgap
