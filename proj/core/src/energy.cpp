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

#include "lavgap/energy.hpp"

#include <stdexcept>

#include "small_buffer.hpp"

namespace lavgap {

namespace {

void check_compatible(const ProductLagrangian& lag, const Trajectory& y) {
  if (y.dimension() != lag.dimension) throw std::invalid_argument("energy: dimension mismatch");
  if (!(y.interval() == lag.interval)) throw std::invalid_argument("energy: interval mismatch");
}

EnergyReport run(const ProductLagrangian& lag, const Trajectory& y, double a, double b,
                 const QuadratureSpec& q, bool with_psi) {
  check_compatible(lag, y);
  if (!(lag.interval.t() <= a && a < b && b <= lag.interval.T())) {
    throw std::invalid_argument("energy: bad subinterval");
  }
  const std::size_t n = lag.dimension;
  Integrand f = [&](double s) {
    detail::SmallBuffer yb(n), ub(n);
    auto yv = yb.span();
    auto uv = ub.span();
    y.value(s, yv);
    y.derivative(s, uv);
    const ExtendedValue lam = lag.Lambda(s, yv, uv);
    if (!with_psi) return Sample{lam.to_double(), lam.is_infinite(), false};
    const ExtendedValue psi = lag.Psi(s, yv);
    const ExtendedValue prod = lam * psi;
    return Sample{prod.to_double(), prod.is_infinite(), psi == ExtendedValue::zero()};
  };
  const auto breaks = y.breakpoints();
  const auto graded = breaks.size() <= q.graded_point_limit ? breaks : std::span<const double>{};
  QuadratureResult r = integrate(f, a, b, breaks, q, graded);
  EnergyReport out;
  out.value = r.value;
  out.cells_used = r.cells_used;
  out.levels = r.levels;
  out.converged = r.converged;
  out.diverged = r.diverged;
  out.infinite_cells = std::move(r.infinite_cells);
  out.psi_zero_cells = std::move(r.flagged_cells);
  return out;
}

}  // namespace

ExtendedValue energy(const ProductLagrangian& lag, const Trajectory& y, const QuadratureSpec& q) {
  return energy_report(lag, y, q).value;
}

EnergyReport energy_report(const ProductLagrangian& lag, const Trajectory& y,
                           const QuadratureSpec& q) {
  return run(lag, y, lag.interval.t(), lag.interval.T(), q, true);
}

EnergyReport energy_over(const ProductLagrangian& lag, const Trajectory& y, double a, double b,
                         const QuadratureSpec& q) {
  return run(lag, y, a, b, q, true);
}

ExtendedValue energy_lambda_only(const ProductLagrangian& lag, const Trajectory& y,
                                 const QuadratureSpec& q) {
  return run(lag, y, lag.interval.t(), lag.interval.T(), q, false).value;
}

}  // namespace lavgap
