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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lavgap/construction.hpp"
#include "lavgap/extended_value.hpp"
#include "lavgap/interval.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Hypotheses on the factors of L = Lambda * Psi. The _y variants are the
// versions restricted to a neighbourhood of a trajectory's range.
enum class Condition {
  S,
  G_Lambda,
  B_Lambda,
  B_Psi,
  C_Psi,
  P_Psi,
  U_yLambda,
  B_yLambda,
  B_yPsi,
  C_yPsi,
  P_yPsi
};

// Sampling can exhibit a failure but only support a Holds verdict.
enum class Verdict { holds, fails_with_witness, inconclusive };

std::string to_string(Condition c);
std::string to_string(Verdict v);
Condition condition_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

// A sample point at which a condition fails. s1 and s2 are set for the
// conditions that compare two times.
struct Witness {
  double s = 0.0;
  std::vector<double> y;
  std::vector<double> u;
  std::optional<double> s1;
  std::optional<double> s2;
  ExtendedValue value;
  std::string detail;
};

struct Sampling {
  std::uint64_t seed = 0x5eed;
  std::size_t time_samples = 33;
  std::size_t state_samples = 33;
  std::size_t velocity_samples = 33;
  // Radius of the velocity box used by (S) and the growth fit.
  double velocity_radius = 16.0;
  // Halvings of eps* (S) and of the probe spacing.
  int refinements = 6;
  // Half-width of the neighbourhood added around a trajectory's range.
  double neighbourhood = 1e-3;
  double positivity_floor = 1e-8;
  int workers = 1;
};

// States drawn from the ball of radius K, or from the range of a
// trajectory widened by Sampling::neighbourhood.
struct StateRegion {
  enum class Kind { ball, along_trajectory };
  Kind kind = Kind::ball;
  double K = 1.0;
  std::optional<Trajectory> y;

  static StateRegion ball(double K);
  static StateRegion along(const Trajectory& y);
};

struct ConditionReport {
  Condition condition = Condition::S;
  Verdict verdict = Verdict::inconclusive;
  // Fitted or sampled constants: kappa, beta, gamma, eps_star, nu0, M, m,
  // alpha, d, K as applicable.
  std::map<std::string, double> constants;
  std::optional<Witness> witness;
  // (x, value) pairs: (nu, sup Lambda) for the B checks, (r, sup Lambda)
  // for the window check, (spacing, worst rate) for (S).
  std::vector<std::pair<double, double>> profile;
  // Range window selected by the (U) check.
  std::optional<Component> window;
  // One witness per failing window for the (U) check.
  std::vector<Witness> window_witnesses;
  // Sample counts and densities.
  std::map<std::string, double> sampling;
  std::string detail;
};

// Condition (S): |Lambda(s2,z,v) - Lambda(s1,z,v)| <= (kappa Lambda(s,z,v)
// + beta |v|^p + gamma) |s2 - s1| for |s_i - s| <= eps*, |z| <= K and
// (s, z, v) in the domain. gamma is fitted as a constant.
ConditionReport check_S(const ProductLagrangian& lag, double K, double p,
                        const Sampling& sampling = {});

// Lambda(s, z, v) >= alpha |v| - d. alpha is capped at 1.
ConditionReport check_growth(const ProductLagrangian& lag, const Sampling& sampling = {});

// Largest nu in nu_grid with Lambda bounded on I x region x B_nu.
ConditionReport check_B_Lambda(const ProductLagrangian& lag, const StateRegion& region,
                               std::vector<double> nu_grid = {0.05, 0.1, 0.2, 0.4, 0.8, 1.0},
                               const Sampling& sampling = {});

enum class PsiMode { boundedness, continuity_in_s, positivity };

ConditionReport check_Psi(const ProductLagrangian& lag, const StateRegion& region, PsiMode mode,
                          const Sampling& sampling = {});

// Windows of y's range in which Lambda is bounded for every r in r_list.
// Empty candidate_windows selects default_windows(y).
ConditionReport check_U(const ProductLagrangian& lag, const Trajectory& y,
                        std::vector<double> r_list = {1.0, 4.0, 16.0, 64.0, 1024.0},
                        std::vector<Component> candidate_windows = {},
                        const Sampling& sampling = {});

// Open windows inside the range of a scalar y: the middle half first, then
// the four quarters. Empty for vector or constant trajectories.
std::vector<Component> default_windows(const Trajectory& y);

// Re-evaluates a witness directly; true when it still violates the
// condition of the report.
bool witness_reproduces(const ProductLagrangian& lag, const ConditionReport& report);

// Bound on the integral of |y'|: (F_y + m d (T - t)) / (m alpha).
// Throws std::invalid_argument unless m > 0, alpha > 0 and F_y is finite.
double l1_derivative_bound(double F_y, double m, double alpha, double d, const Interval& I);

// K0 = |X| + (inf_PX + m d (T - t)) / (m alpha).
double k_zero(const std::vector<double>& X, double inf_PX, double m, double alpha, double d,
              const Interval& I);

// Every checker, at K = sup|y| + 1 for the ball conditions and along y for
// the _y conditions.
std::vector<ConditionReport> run_all_checks(const ProductLagrangian& lag, const Trajectory& y,
                                            const Sampling& sampling = {});

struct GateResult {
  // No gap with one end pinned, and with both ends pinned.
  bool claim1 = false;
  bool claim2 = false;
  // The claim matching the boundary kind.
  bool applicable = false;
  // Missing hypotheses for that claim. Besides condition names, may hold
  // "L_integrable" and "Lambda_integrable".
  std::vector<std::string> missing;
  Variant variant = Variant::initial;
  ExtendedValue energy;
  ExtendedValue lambda_energy;
};

GateResult theorem_gate(const ProductLagrangian& lag, const Trajectory& y,
                        const BoundaryData& boundary, const std::vector<ConditionReport>& reports,
                        const QuadratureSpec& quad = {});

// nu0 from the (B_yLambda) check and, for two pinned ends, U from the
// (U_yLambda) check. Throws std::invalid_argument if either check fails.
StageParams suggest_stage_params(const ProductLagrangian& lag, const Trajectory& y,
                                 const BoundaryData& boundary, const Sampling& sampling = {});

}  // namespace lavgap
