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

#include "lavgap/fixtures.hpp"
#include "lavgap/grid.hpp"
#include "lavgap/norms.hpp"
#include "lavgap/quadrature.hpp"
#include "test_support.hpp"

namespace lavgap {
namespace {

Integrand plain(double (*f)(double)) {
  return [f](double s) { return Sample{f(s), false, false}; };
}

TEST(Quadrature, Polynomial) {
  const auto r = integrate(plain([](double s) { return s * s; }), 0.0, 1.0, {}, {});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.value(), 1.0 / 3.0, 1e-10);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
  const auto r = integrate(plain([](double s) { return 1.0 / std::sqrt(s); }), 0.0, 1.0, {}, {});
  EXPECT_FALSE(r.diverged);
  EXPECT_NEAR(r.value.value(), 2.0, 1e-6);
}

TEST(Quadrature, DivergentEndpointSingularity) {
  const auto r = integrate(plain([](double s) { return 1.0 / s; }), 0.0, 1.0, {}, {});
  EXPECT_TRUE(r.diverged);
  EXPECT_TRUE(r.value.is_infinite());
}

TEST(Quadrature, InteriorSingularityAtGradedPoint) {
  const double c = 0.3;
  const Integrand f = [c](double s) { return Sample{1.0 / std::sqrt(std::abs(s - c)), false, false}; };
  const double pts[] = {c};
  const auto r = integrate(f, 0.0, 1.0, pts, {}, pts);
  EXPECT_NEAR(r.value.value(), 2.0 * (std::sqrt(c) + std::sqrt(1.0 - c)), 1e-6);
}

TEST(Quadrature, InfiniteRegionIsReported) {
  const Integrand f = [](double s) { return Sample{0.0, s > 0.5, false}; };
  const auto r = integrate(f, 0.0, 1.0, {}, {});
  EXPECT_TRUE(r.value.is_infinite());
  EXPECT_FALSE(r.infinite_cells.empty());
}

TEST(Quadrature, RejectsBadSpec) {
  QuadratureSpec q;
  q.base_cells = 0;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(Quadrature, PairwiseSum) {
  const std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
}

TEST(Norms, DerivativeOfSqrtHasUnitL1Norm) {
  const auto y = fixtures::sqrt_root();
  const auto g = Grid::uniform(y.interval(), 16);
  EXPECT_NEAR(lp_norm_derivative(y, 1.0, g).value(), testing::oracle("l1_derivative_sqrt"), 1e-6);
}

TEST(Norms, CuberootDerivativeNotSquareIntegrable) {
  const auto y = fixtures::cuberoot();
  const auto g = Grid::uniform(y.interval(), 16);
  EXPECT_NEAR(lp_norm_derivative(y, 1.0, g).value(), 1.0, 1e-6);
  EXPECT_TRUE(lp_norm_derivative(y, 2.0, g).is_infinite());
}

TEST(Norms, SobolevDistanceMatchesOracle) {
  const auto a = fixtures::cuberoot();
  const auto b = fixtures::affine(a.interval(), 0.0, 1.0);
  const auto g = Grid::uniform(a.interval(), 16);
  EXPECT_NEAR(sobolev_distance(a, b, 1.0, g).value(),
              testing::oracle("sobolev_w11_cuberoot_affine"), 1e-6);
}

TEST(Norms, SupAndLp) {
  const auto y = fixtures::affine(Interval(0.0, 1.0), 0.0, 2.0);
  const auto g = Grid::uniform(y.interval(), 8);
  EXPECT_DOUBLE_EQ(sup_norm(y, g), 2.0);
  EXPECT_NEAR(lp_norm(y, 2.0, g).value(), 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_THROW(lp_norm(y, 0.5, g), std::invalid_argument);
}

TEST(Norms, PiecewiseLinearL1DerivativeIsExact) {
  testing::Gen gen(41);
  for (int i = 0; i < 40; ++i) {
    const auto y = gen.pl_trajectory(2 + gen.index(20), 10.0);
    double exact = 0.0;
    const auto k = y.knots();
    const auto v = y.knot_values();
    for (std::size_t j = 1; j < k.size(); ++j) exact += std::abs(v[j] - v[j - 1]);
    const auto g = Grid::uniform(y.interval(), 8);
    EXPECT_NEAR(lp_norm_derivative(y, 1.0, g).value(), exact, 1e-9 * (1.0 + exact));
    EXPECT_NEAR(sobolev_distance(y, y, 1.0, g).value(), 0.0, 1e-12);
  }
}

TEST(Norms, SobolevDistanceIsSymmetricAndTriangular) {
  testing::Gen gen(43);
  for (int i = 0; i < 30; ++i) {
    const auto a = gen.pl_trajectory(5, 3.0);
    const auto b = gen.pl_trajectory(7, 3.0);
    const auto c = gen.pl_trajectory(4, 3.0);
    const auto g = Grid::uniform(a.interval(), 8);
    const double ab = sobolev_distance(a, b, 1.0, g).value();
    const double ba = sobolev_distance(b, a, 1.0, g).value();
    const double ac = sobolev_distance(a, c, 1.0, g).value();
    const double cb = sobolev_distance(c, b, 1.0, g).value();
    EXPECT_NEAR(ab, ba, 1e-9);
    EXPECT_LE(ab, ac + cb + 1e-9);
  }
}

}  // namespace
}  // namespace lavgap
