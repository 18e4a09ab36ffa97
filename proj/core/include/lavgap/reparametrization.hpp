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

#include <span>
#include <stdexcept>
#include <vector>

#include "lavgap/interval.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// Strictly increasing continuous piecewise-affine map phi on [b_0, b_N]
// with phi(b_i) = c_i.
class Reparametrization {
 public:
  enum class Anchor { left, right };

  // The identity on [0, 1].
  Reparametrization();
  // Throws std::invalid_argument unless b and c have the same length >= 2
  // and both are strictly increasing.
  Reparametrization(std::vector<double> b, std::vector<double> c, Anchor anchor);
  static Reparametrization identity(const Interval& I);

  // phi(s); s is clamped into the domain.
  double operator()(double s) const;
  // phi' on the cell containing s (right cell at a breakpoint).
  double slope(double s) const;

  Interval domain() const { return Interval(b_.front(), b_.back()); }
  Interval image() const { return Interval(c_.front(), c_.back()); }
  std::span<const double> breakpoints() const { return b_; }
  std::span<const double> values() const { return c_; }
  std::vector<double> slopes() const;
  Anchor anchor() const { return anchor_; }

  // psi with psi(phi(s)) = s; cellwise reciprocal slopes.
  Reparametrization inverse() const;

 private:
  std::size_t cell(double s) const;
  std::vector<double> b_;
  std::vector<double> c_;
  Anchor anchor_ = Anchor::left;
};

// Raised by select_sigma when y^{-1}(U) minus the exceptional sets is too
// small to host the slowdown set.
class InsufficientRoomError : public std::runtime_error {
 public:
  explicit InsufficientRoomError(const std::string& what) : std::runtime_error(what) {}
};

// Slope max(|z'| / nu0, 1) on each component of A (component_slopes holds
// |z'|), 1 elsewhere, phi(t) = t.
Reparametrization build_phi_initial(const Interval& I, const IntervalUnion& A,
                                    std::span<const double> component_slopes, double nu0);
// Same slopes anchored at phi(T) = T.
Reparametrization build_phi_final(const Interval& I, const IntervalUnion& A,
                                  std::span<const double> component_slopes, double nu0);

struct TwoEndpointPhi {
  Reparametrization phi;
  // phi(T) - T before the last value is snapped onto T.
  double balance_residual = 0.0;
};

// As build_phi_initial with slope 1/2 on Sigma. Throws std::invalid_argument
// if Sigma meets A or if |phi(T) - T| exceeds 1e-9 (T - t).
TwoEndpointPhi build_phi_two_endpoint(const Interval& I, const IntervalUnion& A,
                                      std::span<const double> component_slopes,
                                      const IntervalUnion& Sigma, double nu0);

// Integral over A of (max(|z'| / nu0, 1) - 1).
double excess_length(const IntervalUnion& A, std::span<const double> component_slopes, double nu0);

// Inner approximation of {s : lo < y(s) < hi} for scalar y: grid cells with
// both ends inside, extended to the crossings by bisection.
IntervalUnion preimage(const Trajectory& y, double lo, double hi, const Grid& grid);

// Packs measure 2 * target into preimage(y, U) minus (A_h u A_hbar), left
// to right, splitting at most one interval. Throws InsufficientRoomError
// when there is not enough room.
IntervalUnion select_sigma(const Trajectory& y, const Component& U, const IntervalUnion& A_h,
                           const IntervalUnion& A_hbar, double target, const Grid& grid);

// y_h = z o psi on I = z's interval. Piecewise linear when z is.
Trajectory reparametrized(const Trajectory& z, const Reparametrization& psi);

}  // namespace lavgap
