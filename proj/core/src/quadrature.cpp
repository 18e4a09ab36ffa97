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

#include "lavgap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lavgap/parallel.hpp"

namespace lavgap {

void QuadratureSpec::validate() const {
  if (base_cells < 8) throw std::invalid_argument("QuadratureSpec: base_cells must be >= 8");
  if (max_refinement_levels < 2 || max_refinement_levels > 24) {
    throw std::invalid_argument("QuadratureSpec: max_refinement_levels must be in [2, 24]");
  }
  if (!(divergence_factor > 1.0)) {
    throw std::invalid_argument("QuadratureSpec: divergence_factor must be > 1");
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (divergence_run < 1 || !(divergence_cap > 0.0) || !(stall_ratio > 0.0 && stall_ratio < 1.0)) {
    throw std::invalid_argument("QuadratureSpec: bad divergence settings");
  }
  if (grading_base < 0 || grading_step < 0 || infinite_depth < 0) {
    throw std::invalid_argument("QuadratureSpec: negative grading or depth");
  }
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTiny = 1e-290;

double end_floor(double x) {
  return std::max(64.0 * std::numeric_limits<double>::epsilon() * std::abs(x), kTiny);
}

std::vector<double> coarse_nodes(double a, double b, std::span<const double> breakpoints,
                                 std::span<const double> graded, int base_cells, int halvings) {
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(base_cells) + breakpoints.size() + 2);
  const double h = (b - a) / base_cells;
  for (int i = 0; i <= base_cells; ++i) nodes.push_back(i == base_cells ? b : a + h * i);
  for (double p : breakpoints) {
    if (p > a && p < b) nodes.push_back(p);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<double> extra;
  // Geometric points from x toward x + width (width may be negative).
  auto grade = [&](double x, double width) {
    for (int j = 1; j <= halvings; ++j) {
      const double d = std::ldexp(width, -j);
      const double p = x + d;
      if (std::abs(d) < end_floor(x) || p == x) break;
      extra.push_back(p);
    }
  };
  grade(a, nodes[1] - a);
  grade(b, nodes[nodes.size() - 2] - b);
  for (double p : graded) {
    if (!(p > a && p < b)) continue;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), p);
    if (it == nodes.end() || *it != p) continue;
    grade(p, *(it - 1) - p);
    grade(p, *(it + 1) - p);
  }
  nodes.insert(nodes.end(), extra.begin(), extra.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

struct Resolved {
  double value;
  bool persistent;
  std::size_t evaluations;
};

// Bisects an infinite-midpoint cell until the infinity is shown to be
// isolated (both halves finite) or persistent.
Resolved resolve(const Integrand& f, double lo, double hi, int depth) {
  const double mid = 0.5 * (lo + hi);
  Sample s = f(mid);
  if (!s.infinite) return {s.value * (hi - lo), false, 1};
  if (depth <= 0 || !(lo < mid && mid < hi) || hi - lo < kTiny) return {kInf, true, 1};
  Resolved l = resolve(f, lo, mid, depth - 1);
  if (l.persistent) return {kInf, true, l.evaluations + 1};
  Resolved r = resolve(f, mid, hi, depth - 1);
  if (r.persistent) return {kInf, true, l.evaluations + r.evaluations + 1};
  return {l.value + r.value, false, l.evaluations + r.evaluations + 1};
}

void append_cell(std::vector<Component>& out, double lo, double hi) {
  if (!out.empty() && out.back().b >= lo) {
    out.back().b = std::max(out.back().b, hi);
  } else {
    out.push_back({lo, hi});
  }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureSpec& spec,
                           std::span<const double> graded) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("integrate: need a < b");

  QuadratureResult result;
  double prev_sum = 0.0;
  double prev_rich = 0.0;
  int growth_run = 0;
  int stall_run = 0;
  double prev_increment = 0.0;

  for (int k = 0; k <= spec.max_refinement_levels; ++k) {
    const std::size_t m = std::size_t{1} << k;
    const std::vector<double> coarse = coarse_nodes(a, b, breakpoints, graded, spec.base_cells,
                                                    spec.grading_base + spec.grading_step * k);
    // Cells too narrow to split m times in floating point are split less.
    std::vector<std::size_t> split(coarse.size() - 1, m), offset(coarse.size(), 0);
    for (std::size_t c = 0; c + 1 < coarse.size(); ++c) {
      const double w = coarse[c + 1] - coarse[c];
      const double scale = std::max(std::abs(coarse[c]), std::abs(coarse[c + 1]));
      while (split[c] > 1 && w / static_cast<double>(split[c]) <
                                 16.0 * std::numeric_limits<double>::epsilon() * scale) {
        split[c] /= 2;
      }
      offset[c + 1] = offset[c] + split[c];
    }
    const std::size_t ncells = offset.back();

    std::vector<double> lo(ncells), hi(ncells), contrib(ncells);
    std::vector<char> infinite(ncells, 0), flagged(ncells, 0);
    for (std::size_t c = 0; c + 1 < coarse.size(); ++c) {
      const double c0 = coarse[c];
      const double w = coarse[c + 1] - c0;
      const std::size_t mc = split[c];
      for (std::size_t i = 0; i < mc; ++i) {
        const std::size_t idx = offset[c] + i;
        lo[idx] = i == 0 ? c0 : c0 + w * static_cast<double>(i) / static_cast<double>(mc);
        hi[idx] = i + 1 == mc ? coarse[c + 1]
                              : c0 + w * static_cast<double>(i + 1) / static_cast<double>(mc);
      }
    }

    parallel_for(ncells, spec.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Sample s = f(0.5 * (lo[i] + hi[i]));
        flagged[i] = s.flagged;
        if (s.infinite) {
          infinite[i] = 1;
        } else {
          contrib[i] = s.value * (hi[i] - lo[i]);
        }
      }
    });

    result.cells_used += ncells;
    std::vector<Component> persistent;
    for (std::size_t i = 0; i < ncells; ++i) {
      if (!infinite[i]) continue;
      Resolved r = resolve(f, lo[i], hi[i], spec.infinite_depth);
      result.cells_used += r.evaluations;
      if (r.persistent) {
        append_cell(persistent, lo[i], hi[i]);
      } else {
        contrib[i] = r.value;
      }
    }

    std::vector<Component> flags;
    for (std::size_t i = 0; i < ncells; ++i) {
      if (flagged[i]) append_cell(flags, lo[i], hi[i]);
    }
    result.flagged_cells = IntervalUnion(std::move(flags));
    result.levels = k + 1;

    if (!persistent.empty()) {
      result.infinite_cells = IntervalUnion(std::move(persistent));
      result.value = ExtendedValue::infinity();
      return result;
    }

    const double sum = pairwise_sum(contrib);
    if (!std::isfinite(sum) || sum > spec.divergence_cap) {
      result.diverged = true;
      result.value = ExtendedValue::infinity();
      return result;
    }
    if (k > 0) {
      growth_run = (prev_sum > 0.0 && sum >= spec.divergence_factor * prev_sum) ? growth_run + 1 : 0;
      // Logarithmic blow-up: each level adds about the same amount.
      const double increment = sum - prev_sum;
      const bool stalled = k > 1 && increment > std::max(spec.abs_tol, spec.rel_tol * sum) &&
                           increment >= spec.stall_ratio * prev_increment;
      stall_run = stalled ? stall_run + 1 : 0;
      prev_increment = increment;
      if (growth_run >= spec.divergence_run || stall_run >= spec.divergence_run) {
        result.diverged = true;
        result.value = ExtendedValue::infinity();
        return result;
      }
    }

    const double rich = k == 0 ? sum : sum + (sum - prev_sum) / 3.0;
    const double estimate = std::max(rich, 0.0);
    result.value = ExtendedValue::finite(estimate);
    if (k >= 2 && std::abs(rich - prev_rich) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(rich))) {
      result.converged = true;
      return result;
    }
    prev_sum = sum;
    prev_rich = rich;
  }
  return result;
}

}  // namespace lavgap
