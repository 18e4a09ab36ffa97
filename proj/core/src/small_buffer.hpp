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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lavgap::detail {

// Scratch vector that stays on the stack for small dimensions.
class SmallBuffer {
 public:
  explicit SmallBuffer(std::size_t n) : n_(n) {
    if (n_ > local_.size()) heap_.resize(n_);
  }
  std::span<double> span() { return {n_ > local_.size() ? heap_.data() : local_.data(), n_}; }

 private:
  std::size_t n_;
  std::array<double, 8> local_{};
  std::vector<double> heap_;
};

}  // namespace lavgap::detail
