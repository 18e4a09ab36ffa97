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

#include "lavgap/extended_value.hpp"
#include "lavgap/grid.hpp"
#include "lavgap/quadrature.hpp"
#include "lavgap/trajectory.hpp"

namespace lavgap {

// max over grid nodes of the Euclidean norm |y(s)|.
double sup_norm(const Trajectory& y, const Grid& g);

// (integral of |y'|^p)^(1/p); +inf when the quadrature diverges. Grid nodes
// are used as extra cell boundaries. Throws std::invalid_argument if p < 1.
ExtendedValue lp_norm_derivative(const Trajectory& y, double p, const Grid& g,
                                 const QuadratureSpec& q = {});

// (integral of |y|^p)^(1/p).
ExtendedValue lp_norm(const Trajectory& y, double p, const Grid& g, const QuadratureSpec& q = {});

// ||a - b||_p + ||a' - b'||_p. Throws std::invalid_argument on interval or
// dimension mismatch.
ExtendedValue sobolev_distance(const Trajectory& a, const Trajectory& b, double p, const Grid& g,
                               const QuadratureSpec& q = {});

}  // namespace lavgap
