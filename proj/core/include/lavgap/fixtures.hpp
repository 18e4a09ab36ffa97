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

#include <string>
#include <vector>

#include "lavgap/trajectory.hpp"

namespace lavgap::fixtures {

// s^(1/3) on [0, 1].
Trajectory cuberoot();
// sqrt(s) on [0, 1].
Trajectory sqrt_root();
// 1 - sqrt(1 - s) on [0, 1]; C^2 on [0, 1[ with positive second derivative.
Trajectory one_minus_sqrt();
// Affine map with y(t) = a, y(T) = b.
Trajectory affine(const Interval& I, double a, double b);
// |s - 1/2| on [0, 1].
Trajectory abs_kink();
// h^(-1/3) on [0, 1/h], s^(1/3) after.
Trajectory truncated_cuberoot(double h);
Trajectory zero(const Interval& I);

// cuberoot, sqrt, affine (0 to 1), one_minus_sqrt, abs_kink, zero.
// Throws std::invalid_argument for unknown names.
Trajectory by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace lavgap::fixtures
