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

#include <compare>
#include <iosfwd>
#include <limits>
#include <string>

namespace lavgap {

// A value in [0, +inf[ u {+inf}. The codomain of every Lagrangian factor and
// of the energy functional.
//
// Arithmetic is monotone. Multiplication uses 0 * inf = inf so that an
// infinite factor is never silently cancelled by a vanishing one.
class ExtendedValue {
 public:
  constexpr ExtendedValue() = default;

  // Throws std::domain_error for negative, NaN or non-finite input.
  static ExtendedValue finite(double v);
  // Like finite(), but saturates +inf (e.g. from pow overflow) to infinity().
  static ExtendedValue from_double(double v);
  static constexpr ExtendedValue infinity() { return ExtendedValue(kInf, true); }
  static constexpr ExtendedValue zero() { return ExtendedValue(); }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  // Throws std::domain_error if infinite.
  double value() const;
  // +inf for the infinite value.
  constexpr double to_double() const { return infinite_ ? kInf : value_; }

  friend ExtendedValue operator+(ExtendedValue a, ExtendedValue b);
  friend ExtendedValue operator*(ExtendedValue a, ExtendedValue b);
  ExtendedValue& operator+=(ExtendedValue other) { return *this = *this + other; }

  friend constexpr bool operator==(ExtendedValue a, ExtendedValue b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::partial_ordering operator<=>(ExtendedValue a, ExtendedValue b) {
    return a.to_double() <=> b.to_double();
  }

  std::string to_string() const;

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr ExtendedValue(double v, bool inf) : value_(v), infinite_(inf) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, ExtendedValue v);

}  // namespace lavgap
