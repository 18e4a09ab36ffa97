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
#include "lavgap/gapsearch.hpp"
#include "test_support.hpp"

namespace lavgap {
namespace {

TEST(SearchSpace, Validation) {
  const auto lag = builtin("power");
  EXPECT_NO_THROW(make_space(lag, BoundaryData::both({0.0}, {1.0}), 8, 2.0).validate());
  EXPECT_THROW(make_space(lag, BoundaryData::both({0.0}, {10.0}), 8, 2.0).validate(),
               InfeasibleSpaceError);
  EXPECT_THROW(make_space(lag, BoundaryData::both({0.0}, {1.0}), 1, 2.0).validate(),
               std::invalid_argument);
  const auto vec = builtin("power", {{"n", 4.0}});
  EXPECT_DOUBLE_EQ(make_space(vec, BoundaryData::initial({0, 0, 0, 0}), 8, 2.0).component_bound(),
                   1.0);
}

TEST(SearchSpace, ProjectionIsFeasible) {
  testing::Gen gen(71);
  const auto lag = builtin("power");
  for (int i = 0; i < 200; ++i) {
    const double M = gen.uniform(1.5, 8.0);
    const double X = gen.uniform(-0.5, 0.5);
    const double Y = X + gen.uniform(-1.0, 1.0);
    BoundaryData b;
    switch (gen.index(3)) {
      case 0: b = BoundaryData::initial({X}); break;
      case 1: b = BoundaryData::final_only({Y}); break;
      default: b = BoundaryData::both({X}, {Y}); break;
    }
    const auto space = make_space(lag, b, 4 + gen.index(60), M);
    const auto y = gen.pl_trajectory(2 + gen.index(30), 40.0);
    const auto p = project_onto(y, space);
    EXPECT_TRUE(is_feasible(p, space));
    if (b.pins_left()) {
      EXPECT_EQ(p.value1(0.0), X);
    }
    if (b.pins_right()) {
      EXPECT_EQ(p.value1(1.0), Y);
    }
  }
}

TEST(SearchSpace, ProjectionKeepsFeasibleInput) {
  const auto lag = builtin("power");
  const auto space = make_space(lag, BoundaryData::both({0.0}, {0.5}), 16, 2.0);
  const auto y = fixtures::affine(Interval(0.0, 1.0), 0.0, 0.5);
  const auto p = project_onto(y, space);
  for (int k = 0; k <= 16; ++k) EXPECT_NEAR(p.value1(k / 16.0), y.value1(k / 16.0), 1e-15);
}

TEST(Minimize, QuadraticTwoEndpointFindsTheLine) {
  const auto lag = builtin("power", {{"p", 2.0}});
  SearchOptions o;
  o.restarts = 4;
  const auto r = minimize_lipschitz(lag, make_space(lag, BoundaryData::both({0.0}, {1.0}), 16, 4.0), o);
  EXPECT_NEAR(r.value.value(), 1.0, 1e-6);
  EXPECT_EQ(r.restarts.size(), 4u);
  for (const auto& rr : r.restarts) EXPECT_LE(rr.final_value, rr.start_value);
}

TEST(Minimize, ManiaOneEndpointReachesZero) {
  const auto lag = builtin("mania");
  SearchOptions o;
  o.restarts = 4;
  const auto r = minimize_lipschitz(lag, make_space(lag, BoundaryData::final_only({1.0}), 64, 2.0), o);
  EXPECT_LE(r.value.value(), 1e-3);
  EXPECT_EQ(r.trajectory.value1(1.0), 1.0);
}

TEST(Minimize, DeterministicForAFixedSeed) {
  const auto lag = builtin("mania");
  SearchOptions o;
  o.restarts = 3;
  o.seed = 9;
  o.max_sweeps = 50;
  const auto space = make_space(lag, BoundaryData::both({0.0}, {1.0}), 16, 4.0);
  const auto a = minimize_lipschitz(lag, space, o);
  const auto b = minimize_lipschitz(lag, space, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
  o.workers = 2;
  EXPECT_EQ(minimize_lipschitz(lag, space, o).value, a.value);
}

TEST(Minimize, ExtraStartsAreUsed) {
  const auto lag = builtin("power", {{"p", 2.0}});
  SearchOptions o;
  o.restarts = 2;
  o.max_sweeps = 0;
  o.starts = {fixtures::affine(Interval(0.0, 1.0), 0.0, 1.0)};
  const auto r = minimize_lipschitz(lag, make_space(lag, BoundaryData::both({0.0}, {1.0}), 8, 4.0), o);
  EXPECT_NEAR(r.restarts.at(1).start_value.value(), 1.0, 1e-9);
}

TEST(GapReport, NoGapForSmoothProblem) {
  GapOptions g;
  g.bounds = {2.0, 4.0};
  g.knots = {16};
  g.restarts = 3;
  const auto est = gap_report(builtin("power", {{"p", 2.0}}), fixtures::affine(Interval(0.0, 1.0), 0.0, 1.0),
                              BoundaryData::both({0.0}, {1.0}), g);
  EXPECT_EQ(est.verdict, GapVerdict::no_gap_evidence);
  EXPECT_EQ(est.lip_inf_per_bound.size(), 2u);
}

TEST(GapReport, InfiniteCandidateIsInconclusive) {
  GapOptions g;
  g.bounds = {2.0};
  g.knots = {8};
  g.restarts = 1;
  const auto est = gap_report(builtin("power", {{"p", 2.0}}), fixtures::cuberoot(),
                              BoundaryData::both({0.0}, {1.0}), g);
  EXPECT_EQ(est.verdict, GapVerdict::inconclusive);
}

TEST(GapReport, AlbertiOneEndpointGap) {
  GapOptions g;
  g.bounds = {2.0, 8.0};
  g.knots = {32};
  g.restarts = 4;
  const auto est = gap_report(builtin("alberti_one_endpoint"), fixtures::one_minus_sqrt(),
                              BoundaryData::final_only({1.0}), g);
  EXPECT_EQ(est.F_candidate, ExtendedValue::zero());
  EXPECT_EQ(est.verdict, GapVerdict::gap_detected);
  for (const auto& row : est.lip_inf_per_bound) {
    EXPECT_TRUE(row.best_value.is_infinite());
    EXPECT_EQ(row.infinite_restarts, row.restarts);
  }
}

TEST(GapReport, SweepRowsAreMonotoneInTheBound) {
  GapOptions g;
  g.bounds = {8.0, 2.0, 4.0};
  g.knots = {16};
  g.restarts = 3;
  g.max_sweeps = 200;
  const auto est = gap_report(builtin("mania"), fixtures::cuberoot(), BoundaryData::both({0.0}, {1.0}), g);
  ASSERT_EQ(est.lip_inf_per_bound.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_LT(est.lip_inf_per_bound[i - 1].slope_bound, est.lip_inf_per_bound[i].slope_bound);
    EXPECT_LE(est.lip_inf_per_bound[i].best_value.value(),
              est.lip_inf_per_bound[i - 1].best_value.value() + 1e-9);
  }
}

TEST(GapVerdictNames, RoundTrip) {
  for (auto v : {GapVerdict::gap_detected, GapVerdict::no_gap_evidence, GapVerdict::inconclusive}) {
    EXPECT_EQ(gap_verdict_from_string(to_string(v)), v);
  }
}

}  // namespace
}  // namespace lavgap
