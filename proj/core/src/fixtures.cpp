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

#include "lavgap/fixtures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lavgap::fixtures {

namespace {
const Interval kUnit(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Trajectory cuberoot() {
  return Trajectory::scalar(
      kUnit, [](double s) { return std::cbrt(s); },
      [](double s) { return s > 0.0 ? 1.0 / (3.0 * std::cbrt(s * s)) : kInf; }, {}, "cuberoot");
}

Trajectory sqrt_root() {
  return Trajectory::scalar(
      kUnit, [](double s) { return std::sqrt(s); },
      [](double s) { return s > 0.0 ? 0.5 / std::sqrt(s) : kInf; }, {}, "sqrt");
}

Trajectory one_minus_sqrt() {
  return Trajectory::scalar(
      // Written without the cancellation of 1 - sqrt(1 - s) near s = 0.
      kUnit, [](double s) { return s / (1.0 + std::sqrt(1.0 - s)); },
      [](double s) { return s < 1.0 ? 0.5 / std::sqrt(1.0 - s) : kInf; }, {}, "one_minus_sqrt");
}

Trajectory affine(const Interval& I, double a, double b) {
  const double t = I.t();
  const double slope = (b - a) / I.length();
  return Trajectory::scalar(
      I, [=](double s) { return a + slope * (s - t); }, [=](double) { return slope; }, {},
      "affine");
}

Trajectory abs_kink() {
  return Trajectory::scalar(
      kUnit, [](double s) { return std::abs(s - 0.5); },
      [](double s) { return s < 0.5 ? -1.0 : 1.0; }, {0.5}, "abs_kink");
}

Trajectory truncated_cuberoot(double h) {
  if (!(h >= 1.0)) throw std::invalid_argument("truncated_cuberoot: need h >= 1");
  const double cut = 1.0 / h;
  const double level = 1.0 / std::cbrt(h);
  return Trajectory::scalar(
      kUnit, [=](double s) { return s <= cut ? level : std::cbrt(s); },
      [=](double s) { return s < cut ? 0.0 : 1.0 / (3.0 * std::cbrt(s * s)); }, {cut},
      "truncated_cuberoot");
}

Trajectory zero(const Interval& I) {
  return Trajectory::scalar(
      I, [](double) { return 0.0; }, [](double) { return 0.0; }, {}, "zero");
}

Trajectory by_name(const std::string& name) {
  if (name == "cuberoot") return cuberoot();
  if (name == "sqrt") return sqrt_root();
  if (name == "affine") return affine(kUnit, 0.0, 1.0);
  if (name == "one_minus_sqrt") return one_minus_sqrt();
  if (name == "abs_kink") return abs_kink();
  if (name == "zero") return zero(kUnit);
  throw std::invalid_argument("unknown trajectory '" + name + "'");
}

std::vector<std::string> names() {
  return {"cuberoot", "sqrt", "affine", "one_minus_sqrt", "abs_kink", "zero"};
}

}  // namespace lavgap::fixtures
