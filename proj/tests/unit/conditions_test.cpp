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

#include <cmath>

#include <gtest/gtest.h>

#include "lavgap/conditions.hpp"
#include "lavgap/fixtures.hpp"
#include "lavgap/lagrangian.hpp"
#include "test_support.hpp"

namespace lavgap {
namespace {

const Interval kUnit(0.0, 1.0);

const ConditionReport& find(const std::vector<ConditionReport>& reps, Condition c) {
  for (const auto& r : reps) {
    if (r.condition == c) return r;
  }
  throw std::logic_error("missing report");
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

TEST(ConditionS, AutonomousHoldsWithZeroConstants) {
  for (const auto& name : {"mania", "arclength", "power", "zero"}) {
    const auto r = check_S(builtin(name), 2.0, 1.0);
    EXPECT_EQ(r.verdict, Verdict::holds) << name;
    EXPECT_EQ(r.constants.at("kappa"), 0.0) << name;
    EXPECT_EQ(r.constants.at("beta"), 0.0) << name;
    EXPECT_EQ(r.constants.at("gamma"), 0.0) << name;
    EXPECT_EQ(r.constants.at("residual"), 0.0) << name;
  }
}

TEST(ConditionS, SqrtInLambdaFailsNearZero) {
  const auto lag = builtin("sqrt_lambda");
  const auto r = check_S(lag, 2.0, 2.0);
  EXPECT_EQ(r.verdict, Verdict::fails_with_witness);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->s, 0.05);
  EXPECT_TRUE(witness_reproduces(lag, r));
}

TEST(ConditionS, SqrtInPsiHolds) {
  EXPECT_EQ(check_S(builtin("sqrt_psi"), 2.0, 2.0).verdict, Verdict::holds);
}

TEST(ConditionS, WeightedQuadraticFitsTheAnalyticBound) {
  const auto r = check_S(builtin("weighted_quadratic"), 2.0, 2.0);
  ASSERT_EQ(r.verdict, Verdict::holds);
  // |d/ds (1+s)u^2| = u^2 <= Lambda: kappa = 1 suffices.
  EXPECT_LE(r.constants.at("kappa"), 1.0 + 1e-12);
  EXPECT_GT(r.constants.at("kappa") + r.constants.at("beta"), 0.0);
  EXPECT_LE(r.constants.at("residual"), 1e-9);
}

TEST(Growth, ArclengthAndPower) {
  const auto arc = check_growth(builtin("arclength"));
  ASSERT_EQ(arc.verdict, Verdict::holds);
  EXPECT_EQ(arc.constants.at("alpha"), 1.0);
  EXPECT_EQ(arc.constants.at("d"), 0.0);

  const auto six = check_growth(builtin("power", {{"p", 6.0}}));
  ASSERT_EQ(six.verdict, Verdict::holds);
  EXPECT_EQ(six.constants.at("alpha"), 1.0);
  // Sampled deficit below the calculus value, and close to it.
  EXPECT_LE(six.constants.at("d"), testing::oracle("growth_deficit_u6") + 1e-12);
  EXPECT_GT(six.constants.at("d"), testing::oracle("growth_deficit_u6") - 1e-3);
}

TEST(Growth, ZeroLagrangianFails) {
  const auto lag = builtin("zero");
  const auto r = check_growth(lag);
  EXPECT_EQ(r.verdict, Verdict::fails_with_witness);
  EXPECT_TRUE(witness_reproduces(lag, r));
}

TEST(BLambda, Power6) {
  const auto r = check_B_Lambda(builtin("power", {{"p", 6.0}}), StateRegion::ball(2.0));
  ASSERT_EQ(r.verdict, Verdict::holds);
  EXPECT_EQ(r.constants.at("nu0"), 1.0);
  EXPECT_EQ(r.constants.at("M"), 1.0);
}

TEST(BLambda, AlbertiTwoEndpointBall) {
  const auto r = check_B_Lambda(builtin("alberti_two_endpoint"), StateRegion::ball(2.0));
  ASSERT_EQ(r.verdict, Verdict::holds);
  EXPECT_LT(r.constants.at("nu0"), 0.5);
  EXPECT_EQ(r.constants.at("M"), 0.0);
}

TEST(BLambda, AlbertiOneEndpointAlongGraph) {
  const auto lag = builtin("alberti_one_endpoint");
  const auto r = check_B_Lambda(lag, StateRegion::along(fixtures::one_minus_sqrt()));
  ASSERT_EQ(r.verdict, Verdict::fails_with_witness);
  EXPECT_EQ(r.witness->u.at(0), 0.0);
  EXPECT_GE(r.witness->y.at(0), 0.0);
  EXPECT_LE(r.witness->y.at(0), 1.0);
  EXPECT_TRUE(witness_reproduces(lag, r));
}

TEST(Psi, ManiaBoundedness) {
  const auto r = check_Psi(builtin("mania"), StateRegion::ball(2.0), PsiMode::boundedness);
  ASSERT_EQ(r.verdict, Verdict::holds);
  EXPECT_LE(r.constants.at("M"), testing::oracle("mania_psi_sup_K2"));
  EXPECT_GT(r.constants.at("M"), 0.9 * testing::oracle("mania_psi_sup_K2"));
}

TEST(Psi, ManiaPositivityFailsAlongTheGraph) {
  const auto lag = builtin("mania");
  const auto r = check_Psi(lag, StateRegion::along(fixtures::cuberoot()), PsiMode::positivity);
  ASSERT_EQ(r.verdict, Verdict::fails_with_witness);
  EXPECT_EQ(r.constants.at("m"), 0.0);
  EXPECT_TRUE(witness_reproduces(lag, r));
}

TEST(Psi, UnitPsiAllModes) {
  const auto lag = builtin("arclength");
  for (auto mode : {PsiMode::boundedness, PsiMode::continuity_in_s, PsiMode::positivity}) {
    const auto r = check_Psi(lag, StateRegion::ball(2.0), mode);
    EXPECT_EQ(r.verdict, Verdict::holds);
  }
  EXPECT_EQ(check_Psi(lag, StateRegion::ball(2.0), PsiMode::boundedness).constants.at("M"), 1.0);
  EXPECT_EQ(check_Psi(lag, StateRegion::ball(2.0), PsiMode::positivity).constants.at("m"), 1.0);
}

TEST(Psi, DiscontinuityInTimeIsFound) {
  ProductLagrangian lag = builtin("arclength");
  lag.Psi = [](double s, std::span<const double>) {
    return ExtendedValue::finite(s < 0.37 ? 1.0 : 2.0);
  };
  lag.unit_psi = false;
  const auto r = check_Psi(lag, StateRegion::ball(1.0), PsiMode::continuity_in_s);
  ASSERT_EQ(r.verdict, Verdict::fails_with_witness);
  EXPECT_NEAR(r.witness->s, 0.37, 1e-6);
  EXPECT_TRUE(witness_reproduces(lag, r));
}

TEST(WindowCheck, RealValuedHolds) {
  const auto r = check_U(builtin("power", {{"p", 6.0}}), fixtures::sqrt_root());
  ASSERT_EQ(r.verdict, Verdict::holds);
  ASSERT_TRUE(r.window.has_value());
  EXPECT_EQ(r.profile.back().second, std::pow(1024.0, 6.0));
}

TEST(WindowCheck, AlbertiFailsEveryWindow) {
  const auto lag = builtin("alberti_two_endpoint");
  const auto y = fixtures::one_minus_sqrt();
  const auto r = check_U(lag, y);
  ASSERT_EQ(r.verdict, Verdict::fails_with_witness);
  EXPECT_EQ(r.window_witnesses.size(), default_windows(y).size());
  for (const auto& w : r.window_witnesses) {
    EXPECT_TRUE(eval_Lambda(lag, w.s, w.y.at(0), w.u.at(0)).is_infinite());
    EXPECT_GT(w.u.at(0), alberti_q(w.y.at(0)));
  }
}

TEST(WindowCheck, ConstantTrajectoryIsInconclusive) {
  EXPECT_EQ(check_U(builtin("arclength"), fixtures::zero(kUnit)).verdict, Verdict::inconclusive);
}

TEST(Formulas, DerivativeBound) {
  EXPECT_EQ(l1_derivative_bound(0.0, 1.0, 1.0, 0.0, kUnit), 0.0);
  EXPECT_NEAR(l1_derivative_bound(2.0, 1.0, 1.0, 1.0, kUnit), 3.0, 1e-12);
  EXPECT_THROW(l1_derivative_bound(1.0, 0.0, 1.0, 0.0, kUnit), std::invalid_argument);
  EXPECT_THROW(l1_derivative_bound(1.0, 1.0, -1.0, 0.0, kUnit), std::invalid_argument);
  EXPECT_THROW(l1_derivative_bound(INFINITY, 1.0, 1.0, 0.0, kUnit), std::invalid_argument);
}

TEST(Formulas, KZero) {
  EXPECT_EQ(k_zero({0.0}, 0.0, 1.0, 1.0, 0.0, kUnit), 0.0);
  EXPECT_NEAR(k_zero({1.0}, 2.0, 1.0, 2.0, 0.0, kUnit), 2.0, 1e-12);
  EXPECT_NEAR(k_zero({3.0, 4.0}, 0.0, 1.0, 1.0, 0.0, kUnit), 5.0, 1e-12);
  // Arclength with X = 0: the infimum over one-endpoint paths is the
  // constant path, of length T - t.
  EXPECT_NEAR(k_zero({0.0}, testing::oracle("arclength_inf_free_end"), 1.0, 1.0, 0.0, kUnit), 1.0,
              1e-12);
}

TEST(Gate, ManiaMissesIntegrability) {
  const auto lag = builtin("mania");
  const auto y = fixtures::cuberoot();
  const auto reps = run_all_checks(lag, y);
  const auto g = theorem_gate(lag, y, BoundaryData::final_only({1.0}), reps);
  EXPECT_FALSE(g.claim1);
  EXPECT_FALSE(g.applicable);
  EXPECT_EQ(g.missing, std::vector<std::string>{"Lambda_integrable"});
  EXPECT_EQ(find(reps, Condition::P_yPsi).verdict, Verdict::fails_with_witness);
}

TEST(Gate, AlbertiTwoEndpointMissesWindow) {
  const auto lag = builtin("alberti_two_endpoint");
  const auto y = fixtures::one_minus_sqrt();
  const auto reps = run_all_checks(lag, y);
  const auto both = theorem_gate(lag, y, BoundaryData::both({0.0}, {1.0}), reps);
  EXPECT_FALSE(both.applicable);
  EXPECT_EQ(both.missing, std::vector<std::string>{"U_yLambda"});
  const auto initial = theorem_gate(lag, y, BoundaryData::initial({0.0}), reps);
  EXPECT_TRUE(initial.applicable);
  EXPECT_TRUE(initial.missing.empty());
}

TEST(Gate, ArclengthBothClaims) {
  const auto lag = builtin("arclength");
  const auto y = fixtures::sqrt_root();
  const auto reps = run_all_checks(lag, y);
  const auto g = theorem_gate(lag, y, BoundaryData::both({0.0}, {1.0}), reps);
  EXPECT_TRUE(g.claim1);
  EXPECT_TRUE(g.claim2);
  EXPECT_TRUE(g.applicable);
  const auto params = suggest_stage_params(lag, y, BoundaryData::both({0.0}, {1.0}));
  EXPECT_EQ(params.nu0, 1.0);
  ASSERT_TRUE(params.U.has_value());
}

TEST(Gate, AlbertiOneEndpointMissesVelocityBound) {
  const auto lag = builtin("alberti_one_endpoint");
  const auto y = fixtures::one_minus_sqrt();
  const auto reps = run_all_checks(lag, y);
  const auto g = theorem_gate(lag, y, BoundaryData::final_only({1.0}), reps);
  EXPECT_FALSE(g.applicable);
  EXPECT_TRUE(contains(g.missing, "B_yLambda"));
  EXPECT_THROW(suggest_stage_params(lag, y, BoundaryData::final_only({1.0})),
               std::invalid_argument);
}

TEST(Witnesses, EveryFailureReproduces) {
  for (const auto& [name, fixture] :
       {std::pair{"mania", "cuberoot"}, {"alberti_two_endpoint", "one_minus_sqrt"},
        {"alberti_one_endpoint", "one_minus_sqrt"}, {"sqrt_lambda", "affine"}, {"zero", "affine"}}) {
    const auto lag = builtin(name);
    for (const auto& r : run_all_checks(lag, fixtures::by_name(fixture))) {
      if (r.verdict != Verdict::fails_with_witness) continue;
      ASSERT_TRUE(r.witness.has_value()) << name << " " << to_string(r.condition);
      EXPECT_TRUE(witness_reproduces(lag, r)) << name << " " << to_string(r.condition);
    }
  }
}

TEST(Names, RoundTrip) {
  for (auto c : {Condition::S, Condition::G_Lambda, Condition::U_yLambda, Condition::P_yPsi}) {
    EXPECT_EQ(condition_from_string(to_string(c)), c);
  }
  for (auto v : {Verdict::holds, Verdict::fails_with_witness, Verdict::inconclusive}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  EXPECT_EQ(to_string(Verdict::fails_with_witness), "FailsWithWitness");
}

}  // namespace
}  // namespace lavgap
