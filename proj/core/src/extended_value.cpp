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

#include "lavgap/extended_value.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lavgap {

ExtendedValue ExtendedValue::finite(double v) {
  if (std::isnan(v)) throw std::domain_error("ExtendedValue: NaN");
  if (v < 0.0) throw std::domain_error("ExtendedValue: negative value " + std::to_string(v));
  if (!std::isfinite(v)) throw std::domain_error("ExtendedValue: non-finite value");
  return ExtendedValue(v, false);
}

ExtendedValue ExtendedValue::from_double(double v) {
  if (v == kInf) return infinity();
  return finite(v);
}

double ExtendedValue::value() const {
  if (infinite_) throw std::domain_error("ExtendedValue: value() of +inf");
  return value_;
}

ExtendedValue operator+(ExtendedValue a, ExtendedValue b) {
  if (a.infinite_ || b.infinite_) return ExtendedValue::infinity();
  return ExtendedValue::from_double(a.value_ + b.value_);
}

ExtendedValue operator*(ExtendedValue a, ExtendedValue b) {
  if (a.infinite_ || b.infinite_) return ExtendedValue::infinity();
  return ExtendedValue::from_double(a.value_ * b.value_);
}

std::string ExtendedValue::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, ExtendedValue v) {
  if (v.is_infinite()) return os << "+inf";
  return os << v.to_double();
}

}  // namespace lavgap
