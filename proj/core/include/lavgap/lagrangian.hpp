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
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lavgap/extended_value.hpp"
#include "lavgap/interval.hpp"

namespace lavgap {

using LambdaFn = std::function<ExtendedValue(double s, std::span<const double> y,
                                             std::span<const double> u)>;
using PsiFn = std::function<ExtendedValue(double s, std::span<const double> y)>;
using Params = std::map<std::string, double>;

// L(s, y, u) = Lambda(s, y, u) * Psi(s, y) on I x R^n x R^n.
struct ProductLagrangian {
  std::string name;
  Interval interval{0.0, 1.0};
  std::size_t dimension = 1;
  // Sobolev exponent of the admissible class.
  double p = 1.0;
  LambdaFn Lambda;
  PsiFn Psi;
  std::string domain_hint;
  // True when Psi is identically 1.
  bool unit_psi = false;
};

// Throws std::out_of_range if s is outside the interval and
// std::invalid_argument on a dimension mismatch.
ExtendedValue eval_L(const ProductLagrangian& lag, double s, std::span<const double> y,
                     std::span<const double> u);

// Scalar convenience overload for one-dimensional Lagrangians.
ExtendedValue eval_L(const ProductLagrangian& lag, double s, double y, double u);
ExtendedValue eval_Lambda(const ProductLagrangian& lag, double s, double y, double u);
ExtendedValue eval_Psi(const ProductLagrangian& lag, double s, double y);

// Names accepted by builtin(): mania, alberti_two_endpoint,
// alberti_one_endpoint, power, arclength, plus the auxiliary sqrt_lambda,
// sqrt_psi, weighted_quadratic and zero.
//
// Recognized params: t, T (interval), p (power exponent), n (dimension of
// power, arclength and zero) and slack (relative tolerance of the Alberti
// velocity threshold). Throws std::invalid_argument for unknown names.
ProductLagrangian builtin(const std::string& name, const Params& params = {});
std::vector<std::string> builtin_names();

// q(z) = 1 / (2 (1 - z)) for z in [0, 1[, +inf at z >= 1.
double alberti_q(double z);

// Lambda(t, y, u) finite.
bool in_domain(const ProductLagrangian& lag, std::span<const double> y,
               std::span<const double> u);
bool in_domain(const ProductLagrangian& lag, double y, double u);

struct LagrangianValidation {
  bool nonnegative = true;
  bool product_domain = true;
  std::size_t samples = 0;
  std::string detail;
  bool ok() const { return nonnegative && product_domain; }
};

// Samples random (y, u) in a box of radius `radius` and random time pairs;
// checks Lambda, Psi >= 0 (never NaN) and that finiteness of Lambda does
// not depend on s.
LagrangianValidation validate_lagrangian(const ProductLagrangian& lag, std::uint64_t seed,
                                         std::size_t states = 100, std::size_t time_pairs = 10,
                                         double radius = 4.0);

struct BoundaryData {
  enum class Kind { initial_only, final_only, both };
  Kind kind = Kind::both;
  std::vector<double> X;
  std::vector<double> Y;

  static BoundaryData initial(std::vector<double> X);
  static BoundaryData final_only(std::vector<double> Y);
  static BoundaryData both(std::vector<double> X, std::vector<double> Y);

  bool pins_left() const { return kind != Kind::final_only; }
  bool pins_right() const { return kind != Kind::initial_only; }
  // Throws std::invalid_argument if a pinned vector does not have n entries.
  void validate(std::size_t n) const;
};

std::string to_string(BoundaryData::Kind kind);
BoundaryData::Kind boundary_kind_from_string(const std::string& s);

}  // namespace lavgap
