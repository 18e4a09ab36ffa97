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

#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "lavgap/conditions.hpp"
#include "lavgap/construction.hpp"
#include "lavgap/energy.hpp"
#include "lavgap/fixtures.hpp"
#include "lavgap/reparametrization.hpp"
#include "lavgap/skeleton.hpp"
#include "test_support.hpp"

namespace lavgap {
namespace {

const Interval kUnit(0.0, 1.0);

TEST(Skeleton, MeasureBudgetOnFixtures) {
  for (const auto& name : {"cuberoot", "sqrt", "one_minus_sqrt", "abs_kink"}) {
    const auto y = fixtures::by_name(name);
    for (int h = 0; h <= 10; ++h) {
      const auto sk = affine_skeleton(y, h);
      EXPECT_LE(sk.A.measure(), 1.0 / (2.0 * (h + 1)) * (1 + 1e-12)) << name << " h=" << h;
      EXPECT_EQ(sk.beta.size(), sk.A.size());
      // z agrees with y off A.
      for (int k = 0; k <= 200; ++k) {
        const double s = k / 200.0;
        if (!sk.A.contains(s)) {
          EXPECT_NEAR(sk.z.value1(s), y.value1(s), 1e-12) << name;
        }
      }
    }
  }
}

TEST(Skeleton, LipschitzInputHasEmptySetAboveItsSlope) {
  const auto y = fixtures::affine(kUnit, 0.0, 1.0);
  const auto sk = affine_skeleton_at_level(y, 2.0);
  EXPECT_TRUE(sk.A.empty());
}

TEST(Skeleton, AffineOnComponents) {
  const auto y = fixtures::cuberoot();
  const auto sk = affine_skeleton(y, 3);
  ASSERT_FALSE(sk.A.empty());
  for (std::size_t k = 0; k < sk.A.size(); ++k) {
    const auto c = sk.A.components()[k];
    const double mid = 0.5 * (c.a + c.b);
    const double chord = (y.value1(c.b) - y.value1(c.a)) / c.length();
    EXPECT_NEAR(sk.z.derivative1(mid), chord, 1e-9);
    EXPECT_NEAR(sk.component_slopes[k], std::abs(chord), 1e-9);
  }
}

TEST(Skeleton, RejectsNegativeStage) {
  EXPECT_THROW(affine_skeleton(fixtures::sqrt_root(), -1), std::invalid_argument);
}

TEST(Reparametrization, InverseOfRandomMaps) {
  testing::Gen gen(61);
  for (int i = 0; i < 100; ++i) {
    const auto phi = gen.reparametrization(2 + gen.index(12), 0.0, 1.0, gen.uniform(0.5, 3.0));
    const auto psi = phi.inverse();
    for (int k = 0; k <= 1000; ++k) {
      const double s = k / 1000.0;
      EXPECT_NEAR(psi(phi(s)), s, 1e-12);
    }
    const auto sl = phi.slopes();
    const auto isl = psi.slopes();
    ASSERT_EQ(sl.size(), isl.size());
    for (std::size_t j = 0; j < sl.size(); ++j) EXPECT_NEAR(sl[j] * isl[j], 1.0, 1e-9);
  }
}

TEST(Reparametrization, RejectsNonMonotone) {
  EXPECT_THROW(Reparametrization({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}, Reparametrization::Anchor::left),
               std::invalid_argument);
}

// Random exceptional sets with random chord slopes.
struct PhiCase {
  IntervalUnion A;
  std::vector<double> slopes;
  double nu0;
};

PhiCase random_case(testing::Gen& gen) {
  PhiCase c;
  c.A = gen.interval_union(1 + gen.index(5), 0.0, 1.0, gen.uniform(0.05, 0.3));
  for (std::size_t k = 0; k < c.A.size(); ++k) c.slopes.push_back(gen.uniform(0.0, 20.0));
  c.nu0 = gen.uniform(0.5, 4.0);
  return c;
}

TEST(Reparametrization, OneEndpointMaps) {
  testing::Gen gen(62);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_case(gen);
    const auto left = build_phi_initial(kUnit, c.A, c.slopes, c.nu0);
    const auto right = build_phi_final(kUnit, c.A, c.slopes, c.nu0);
    const double excess = excess_length(c.A, c.slopes, c.nu0);
    EXPECT_EQ(left(0.0), 0.0);
    EXPECT_EQ(right(1.0), 1.0);
    EXPECT_NEAR(left(1.0), 1.0 + excess, 1e-12);
    EXPECT_NEAR(right(0.0), -excess, 1e-12);
    for (double s : left.slopes()) EXPECT_GE(s, 1.0 - 1e-12);
    // Slowed chords have slope at most nu0 after reparametrization.
    for (std::size_t k = 0; k < c.A.size(); ++k) {
      const auto comp = c.A.components()[k];
      const double mid = 0.5 * (comp.a + comp.b);
      EXPECT_NEAR(c.slopes[k] / left.slope(mid), std::min(c.nu0, c.slopes[k]), 1e-9);
    }
  }
}

TEST(Reparametrization, TwoEndpointMassBalance) {
  testing::Gen gen(63);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_case(gen);
    const double excess = excess_length(c.A, c.slopes, c.nu0);
    // Sigma of measure 2 * excess inside the complement of A.
    const auto room = IntervalUnion({{0.0, 1.0}}).subtract(c.A);
    if (room.measure() <= 2.0 * excess + 1e-6) continue;
    std::vector<Component> sigma;
    double need = 2.0 * excess;
    for (const auto& r : room.components()) {
      if (need <= 0.0) break;
      const double take = std::min(need, r.length());
      sigma.push_back({r.a, r.a + take});
      need -= take;
    }
    const auto tp = build_phi_two_endpoint(kUnit, c.A, c.slopes, IntervalUnion(sigma), c.nu0);
    EXPECT_EQ(tp.phi(0.0), 0.0);
    EXPECT_EQ(tp.phi(1.0), 1.0);
    EXPECT_LE(std::abs(tp.balance_residual), 1e-9);
  }
}

TEST(Reparametrization, TwoEndpointRejectsOverlap) {
  const IntervalUnion A({{0.1, 0.2}});
  const std::vector<double> slopes{4.0};
  EXPECT_THROW(build_phi_two_endpoint(kUnit, A, slopes, IntervalUnion({{0.15, 0.5}}), 1.0),
               std::invalid_argument);
}

TEST(Reparametrization, PreimageOfMonotoneTrajectory) {
  const auto y = fixtures::sqrt_root();
  const auto g = Grid::uniform(kUnit, 64);
  const auto pre = preimage(y, 0.5, 0.9, g);
  ASSERT_EQ(pre.size(), 1u);
  EXPECT_NEAR(pre.components()[0].a, 0.25, 1e-9);
  EXPECT_NEAR(pre.components()[0].b, 0.81, 1e-9);
}

TEST(Construction, LipschitzInputIsReturnedUnchanged) {
  const auto y = fixtures::affine(kUnit, 0.0, 0.5);
  StageParams params;
  params.nu0 = 1.0;
  params.U = Component{0.1, 0.4};
  for (auto boundary : {BoundaryData::initial({0.0}), BoundaryData::final_only({0.5}),
                        BoundaryData::both({0.0}, {0.5})}) {
    const auto seq = construct_sequence(builtin("power"), y, boundary, params, 4);
    for (const auto& rep : seq.reports) {
      EXPECT_TRUE(rep.A_h.empty());
      EXPECT_EQ(rep.diagnostics.measure_Sigma_h, 0.0);
      EXPECT_NEAR(rep.diagnostics.sobolev_distance_to_y.value(), 0.0, 1e-12);
      for (int k = 0; k <= 50; ++k) EXPECT_NEAR(rep.y_h.value1(k / 50.0), y.value1(k / 50.0), 1e-12);
    }
  }
}

TEST(Construction, ManiaFinalEndpoint) {
  const auto y = fixtures::cuberoot();
  StageParams params;
  params.nu0 = 1.0;
  const auto seq =
      construct_sequence(builtin("mania"), y, BoundaryData::final_only({1.0}), params, 8);
  EXPECT_TRUE(verify_sequence(seq, y).empty());
  double prev = INFINITY;
  for (const auto& rep : seq.reports) {
    EXPECT_EQ(rep.diagnostics.energy_y_h, ExtendedValue::zero());
    EXPECT_EQ(rep.y_h.value1(1.0), 1.0);
    EXPECT_LT(rep.diagnostics.sobolev_distance_to_y.value(), prev);
    prev = rep.diagnostics.sobolev_distance_to_y.value();
    EXPECT_TRUE(rep.diagnostics.slope_certificate);
  }
}

TEST(Construction, InitialVariantPinsTheLeftEnd) {
  const auto y = fixtures::one_minus_sqrt();
  StageParams params;
  params.nu0 = 0.4;
  const auto seq = construct_sequence(builtin("alberti_two_endpoint"), y,
                                      BoundaryData::initial({0.0}), params, 6);
  EXPECT_TRUE(verify_sequence(seq, y).empty());
  for (const auto& rep : seq.reports) {
    EXPECT_EQ(rep.y_h.value1(0.0), 0.0);
    EXPECT_EQ(rep.diagnostics.energy_y_h, ExtendedValue::zero());
  }
}

TEST(Construction, TwoEndpointArclength) {
  const auto y = fixtures::sqrt_root();
  StageParams params;
  params.nu0 = 1.0;
  params.U = Component{0.5, 0.9};
  const auto seq =
      construct_sequence(builtin("arclength"), y, BoundaryData::both({0.0}, {1.0}), params, 6);
  EXPECT_TRUE(verify_sequence(seq, y).empty());
  for (const auto& rep : seq.reports) {
    EXPECT_LE(rep.diagnostics.endpoint_residual_left, 1e-9);
    EXPECT_LE(rep.diagnostics.endpoint_residual_right, 1e-9);
    EXPECT_LE(std::abs(rep.diagnostics.mass_balance_residual), 1e-9);
    EXPECT_LE(rep.diagnostics.inverse_residual, 1e-9);
    // Sigma lies where y takes values in U.
    for (const auto& c : rep.Sigma_h.components()) {
      EXPECT_GE(y.value1(c.a), 0.5 - 1e-9);
      EXPECT_LE(y.value1(c.b), 0.9 + 1e-9);
    }
  }
}

TEST(Construction, MeasureEstimatesOnEveryStage) {
  for (const auto& [name, nu0] : {std::pair{"cuberoot", 1.0}, {"sqrt", 1.0}, {"abs_kink", 0.5}}) {
    const auto y = fixtures::by_name(name);
    StageParams params;
    params.nu0 = nu0;
    const auto seq =
        construct_sequence(builtin("arclength"), y, BoundaryData::initial({y.value1(0.0)}), params, 8);
    for (const auto& rep : seq.reports) {
      const auto& d = rep.diagnostics;
      EXPECT_LE(d.measure_A_h, 1.0 / (2.0 * (rep.h + 1)) * (1 + 1e-12)) << name;
      EXPECT_LE(d.measure_phi_A_h, d.image_bound * (1 + 1e-12)) << name;
    }
  }
}

TEST(Construction, Preconditions) {
  const auto y = fixtures::sqrt_root();
  StageParams params;
  EXPECT_THROW(construct_sequence(builtin("arclength"), y, BoundaryData::initial({0.0}), params, 2),
               std::invalid_argument);
  params.nu0 = 1.0;
  EXPECT_THROW(construct_sequence(builtin("arclength"), y, BoundaryData::both({0.0}, {1.0}), params, 2),
               std::invalid_argument);
  EXPECT_THROW(construct_sequence(builtin("power", {{"p", 2.0}}), fixtures::cuberoot(),
                                  BoundaryData::initial({0.0}), params, 2),
               std::invalid_argument);
}

TEST(Construction, ChooseHbar) {
  const auto y = fixtures::sqrt_root();
  const auto [hbar, ell] = choose_hbar(y, Component{0.5, 0.9}, SkeletonOptions{});
  EXPECT_GE(hbar, 1);
  EXPECT_GT(ell, 0.0);
  const auto sk = affine_skeleton(y, hbar);
  EXPECT_GT(0.81 - 0.25, 10.0 * sk.A.measure());
}

TEST(Construction, SmallestUsableStage) {
  const auto y = fixtures::cuberoot();
  const auto lag = builtin("arclength");
  const auto windows = default_windows(y);
  ASSERT_FALSE(windows.empty());
  StageParams params;
  params.nu0 = 1.0;
  params.U = windows.front();
  const int h0 = smallest_usable_h(y, params);
  ASSERT_GT(h0, 1);
  const auto both = BoundaryData::both({y.value1(0.0)}, {y.value1(1.0)});
  try {
    construct_sequence(lag, y, both, params, h0);
    FAIL() << "expected InsufficientRoomError";
  } catch (const InsufficientRoomError& e) {
    EXPECT_NE(std::string(e.what()).find("smallest usable h is " + std::to_string(h0)),
              std::string::npos)
        << e.what();
  }
  ConstructionOptions opts;
  opts.first_h = h0;
  const auto seq = construct_sequence(lag, y, both, params, h0 + 2, opts);
  ASSERT_EQ(seq.reports.size(), 3u);
  EXPECT_EQ(seq.reports.front().h, h0);
  // Three stages are too few for the convergence targets.
  SequenceTolerances tol;
  tol.final_distance = INFINITY;
  tol.final_energy_relative = INFINITY;
  for (const auto& f : verify_sequence(seq, y, tol)) ADD_FAILURE() << f;
  opts.first_h = h0 + 3;
  EXPECT_THROW(construct_sequence(lag, y, both, params, h0 + 2, opts), std::invalid_argument);
}

}  // namespace
}  // namespace lavgap
