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

#include "lavgap/extended_value.hpp"
#include "lavgap/interval.hpp"
#include "lavgap/lagrangian.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

struct EnergyReport {
  ExtendedValue value;
  std::size_t cells_used = 0;
  int levels = 0;
  bool converged = false;
  bool diverged = false;
  IntervalUnion infinite_cells;
  // Cells where Psi(s, y(s)) == 0 exactly, whatever Lambda was.
  IntervalUnion psi_zero_cells;
};

// F(y) = integral over I of Lambda(s, y, y') Psi(s, y). Throws
// std::invalid_argument if y's interval or dimension differ from lag's.
ExtendedValue energy(const ProductLagrangian& lag, const Trajectory& y,
                     const QuadratureSpec& q = {});
EnergyReport energy_report(const ProductLagrangian& lag, const Trajectory& y,
                           const QuadratureSpec& q = {});
// Same integrand over [a, b], a subinterval of I.
EnergyReport energy_over(const ProductLagrangian& lag, const Trajectory& y, double a, double b,
                         const QuadratureSpec& q = {});
// Integral of Lambda(s, y, y') alone.
ExtendedValue energy_lambda_only(const ProductLagrangian& lag, const Trajectory& y,
                                 const QuadratureSpec& q = {});

}  // namespace lavgap
