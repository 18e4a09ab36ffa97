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

#include "lavgap/energy.hpp"
#include "lavgap/fixtures.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/problem.hpp"
#include "test_support.hpp"

namespace lavgap {
namespace {

TEST(Lagrangian, ManiaFactors) {
  const auto lag = builtin("mania");
  EXPECT_DOUBLE_EQ(eval_Lambda(lag, 0.5, 1.0, 2.0).value(), 64.0);
  EXPECT_DOUBLE_EQ(eval_Psi(lag, 0.5, 1.0).value(), 0.25);
  EXPECT_DOUBLE_EQ(eval_L(lag, 0.5, 1.0, 2.0).value(), 16.0);
  // Psi vanishes on the graph of the cube root.
  EXPECT_NEAR(eval_Psi(lag, 0.125, 0.5).value(), 0.0, 1e-30);
}

TEST(Lagrangian, AlbertiThreshold) {
  EXPECT_DOUBLE_EQ(alberti_q(0.0), 0.5);
  EXPECT_DOUBLE_EQ(alberti_q(0.5), 1.0);
  EXPECT_TRUE(std::isinf(alberti_q(1.0)));
  const auto two = builtin("alberti_two_endpoint");
  EXPECT_EQ(eval_Lambda(two, 0.3, 0.5, 0.9).value(), 0.0);
  EXPECT_TRUE(eval_Lambda(two, 0.3, 0.5, 1.1).is_infinite());
  EXPECT_EQ(eval_Lambda(two, 0.3, 1.5, 100.0).value(), 0.0);
  const auto one = builtin("alberti_one_endpoint");
  EXPECT_EQ(eval_Lambda(one, 0.3, 0.5, 1.1).value(), 0.0);
  EXPECT_TRUE(eval_Lambda(one, 0.3, 0.5, 0.9).is_infinite());
  EXPECT_TRUE(eval_Lambda(one, 0.3, 1.5, 100.0).is_infinite());
}

TEST(Lagrangian, ZeroTimesInfiniteStaysInfinite) {
  // Psi = 0 on the graph cannot cancel an infinite Lambda.
  ProductLagrangian lag = builtin("zero");
  lag.Lambda = [](double, std::span<const double>, std::span<const double>) {
    return ExtendedValue::infinity();
  };
  EXPECT_TRUE(eval_L(lag, 0.5, 0.0, 0.0).is_infinite());
}

TEST(Lagrangian, BuiltinsValidate) {
  for (const auto& name : builtin_names()) {
    const auto lag = builtin(name);
    const auto v = validate_lagrangian(lag, 7);
    EXPECT_TRUE(v.ok()) << name << ": " << v.detail;
  }
  EXPECT_THROW(builtin("nope"), std::invalid_argument);
}

TEST(Lagrangian, ParamsAndDimension) {
  const auto lag = builtin("power", {{"p", 3.0}, {"n", 2.0}});
  EXPECT_EQ(lag.dimension, 2u);
  const double y[] = {0.0, 0.0};
  const double u[] = {3.0, 4.0};
  EXPECT_NEAR(eval_L(lag, 0.5, y, u).value(), 125.0, 1e-9);
  const double bad[] = {1.0};
  EXPECT_THROW(eval_L(lag, 0.5, bad, u), std::invalid_argument);
  EXPECT_THROW(eval_L(lag, 2.0, y, u), std::out_of_range);
}

TEST(Energy, ArclengthOfSqrtMatchesOracle) {
  const auto F = energy(builtin("arclength"), fixtures::sqrt_root());
  EXPECT_NEAR(F.value(), testing::oracle("arclength_sqrt_energy"), 1e-6);
}

TEST(Energy, ClosedFormIntegrands) {
  const auto y = fixtures::affine(Interval(0.0, 1.0), 0.0, 1.0);
  EXPECT_NEAR(energy(builtin("power", {{"p", 2.0}}), y).value(),
              testing::oracle("power2_affine_energy"), 1e-9);
  EXPECT_NEAR(energy(builtin("weighted_quadratic"), y).value(),
              testing::oracle("weighted_quadratic_affine_energy"), 1e-9);
  EXPECT_EQ(energy(builtin("zero"), y), ExtendedValue::zero());
}

TEST(Energy, ManiaAtCuberoot) {
  const auto lag = builtin("mania");
  const auto y = fixtures::cuberoot();
  EXPECT_EQ(energy(lag, y), ExtendedValue::zero());
  EXPECT_TRUE(energy_lambda_only(lag, y).is_infinite());
  const auto rep = energy_report(lag, y);
  EXPECT_FALSE(rep.psi_zero_cells.empty());
}

TEST(Energy, AlbertiTwoEndpoint) {
  const auto lag = builtin("alberti_two_endpoint");
  EXPECT_EQ(energy(lag, fixtures::one_minus_sqrt()), ExtendedValue::zero());
  // The line from 0 to 1 exceeds q(z) for z < 1/2.
  const auto rep = energy_report(lag, fixtures::affine(Interval(0.0, 1.0), 0.0, 1.0));
  EXPECT_TRUE(rep.value.is_infinite());
  EXPECT_NEAR(rep.infinite_cells.measure(), 0.5, 0.05);
}

TEST(Energy, DivergentIntegral) {
  // |y'|^2 for the cube root behaves like s^(-4/3).
  EXPECT_TRUE(energy(builtin("power", {{"p", 2.0}}), fixtures::cuberoot()).is_infinite());
}

TEST(Energy, AdditiveOverSubintervals) {
  testing::Gen gen(51);
  const auto lag = builtin("arclength");
  for (int i = 0; i < 20; ++i) {
    const auto y = gen.pl_trajectory(3 + gen.index(8), 5.0);
    const double c = gen.uniform(0.1, 0.9);
    const double whole = energy(lag, y).value();
    const double parts =
        energy_over(lag, y, 0.0, c).value.value() + energy_over(lag, y, c, 1.0).value.value();
    EXPECT_NEAR(whole, parts, 1e-8);
  }
}

TEST(Energy, RejectsMismatch) {
  const auto lag = builtin("power", {{"n", 2.0}});
  EXPECT_THROW(energy(lag, fixtures::sqrt_root()), std::invalid_argument);
}

TEST(Problem, ParseAndRoundTrip) {
  const auto doc = nlohmann::json::parse(R"({
    "lagrangian": {"name": "power", "params": {"p": 2}},
    "interval": [0, 2],
    "boundary": {"kind": "final", "Y": 3}
  })");
  const auto pb = parse_problem(doc);
  EXPECT_EQ(pb.lag.interval.T(), 2.0);
  EXPECT_EQ(pb.boundary.kind, BoundaryData::Kind::final_only);
  EXPECT_EQ(pb.boundary.Y, std::vector<double>{3.0});
  const auto again = parse_problem(problem_to_json(pb));
  EXPECT_EQ(again.lagrangian_name, "power");
  EXPECT_EQ(again.boundary.Y, pb.boundary.Y);
  EXPECT_EQ(again.lag.p, pb.lag.p);
  EXPECT_THROW(parse_problem(nlohmann::json::parse(R"({"lagrangian": 3})")),
               std::invalid_argument);
}

}  // namespace
}  // namespace lavgap
