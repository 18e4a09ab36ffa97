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

#include "lavgap/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lavgap/norms.hpp"

namespace lavgap {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> quotients(const Trajectory& y, const Grid& g) {
  const std::size_t n = y.dimension();
  std::vector<double> values(g.size() * n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    y.value(g[k], std::span<double>(values.data() + k * n, n));
  }
  std::vector<double> q(g.cells());
  for (std::size_t k = 0; k < g.cells(); ++k) {
    q[k] = distance(std::span<const double>(values.data() + k * n, n),
                    std::span<const double>(values.data() + (k + 1) * n, n)) /
           (g[k + 1] - g[k]);
  }
  return q;
}

double l1_of(const Trajectory& y, const SkeletonOptions& options) {
  if (options.l1_derivative) return *options.l1_derivative;
  const Interval& I = y.interval();
  const ExtendedValue v = lp_norm_derivative(y, 1.0, Grid({I.t(), I.T()}), options.quad);
  if (v.is_infinite()) throw NotW11Error();
  return v.value();
}

Skeleton finish(const Trajectory& y, int h, double level, double budget, double l1, Grid grid,
                const std::vector<double>& q, const SkeletonOptions& options) {
  std::vector<Component> cells;
  double ell = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] > level) {
      cells.push_back({grid[k], grid[k + 1]});
    } else {
      ell = std::max(ell, q[k]);
    }
  }
  Skeleton sk;
  sk.h = h;
  sk.A = IntervalUnion::normalized(std::move(cells));
  sk.level = level;
  sk.budget = budget;
  sk.l1_derivative = l1;
  sk.working_grid = std::move(grid);
  sk.ell = ell;
  sk.z = skeleton_trajectory(y, sk.A, options.free_end);
  const Interval& I = y.interval();
  for (const Component& c : sk.A.components()) {
    const double beta = distance(y.value(c.a), y.value(c.b));
    const bool free = (options.free_end == FreeEnd::left && c.a == I.t()) ||
                      (options.free_end == FreeEnd::right && c.b == I.T());
    sk.beta.push_back(beta);
    sk.component_slopes.push_back(free ? 0.0 : beta / c.length());
  }
  return sk;
}

}  // namespace

Grid working_grid(const Trajectory& y, const SkeletonOptions& options) {
  return Grid::graded(y.interval(), options.working_cells, options.grading_depth)
      .merged(y.breakpoints());
}

Skeleton affine_skeleton(const Trajectory& y, int h, const SkeletonOptions& options) {
  if (h < 0) throw std::invalid_argument("affine_skeleton: h must be >= 0");
  const Interval& I = y.interval();
  const double l1 = l1_of(y, options);
  Grid grid = working_grid(y, options);
  const std::vector<double> q = quotients(y, grid);
  const double budget = I.length() / (2.0 * (h + 1));

  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return q[a] > q[b]; });
  // Smallest level whose strict super-level set fits the budget.
  double level_budget = 0.0;
  double used = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const std::size_t k = order[j];
    const double w = grid[k + 1] - grid[k];
    if (used + w > budget) {
      level_budget = q[k];
      break;
    }
    used += w;
  }
  const double schedule = std::pow(options.level_growth, h) * l1 / I.length();
  const double level = std::max(level_budget, schedule);
  return finish(y, h, level, budget, l1, std::move(grid), q, options);
}

Skeleton affine_skeleton_at_level(const Trajectory& y, double level,
                                  const SkeletonOptions& options) {
  if (!(level >= 0.0)) throw std::invalid_argument("affine_skeleton_at_level: level must be >= 0");
  const double l1 = l1_of(y, options);
  Grid grid = working_grid(y, options);
  const std::vector<double> q = quotients(y, grid);
  return finish(y, 0, level, y.interval().length(), l1, std::move(grid), q, options);
}

Trajectory skeleton_trajectory(const Trajectory& y, const IntervalUnion& A, FreeEnd free_end) {
  if (A.empty()) return y;
  const Interval I = y.interval();
  const std::size_t n = y.dimension();
  const auto comps = A.components();

  struct Piece {
    double a, b;
    std::vector<double> ya, yb;
  };
  std::vector<Piece> pieces;
  for (const Component& c : comps) {
    Piece p{c.a, c.b, y.value(c.a), y.value(c.b)};
    if (free_end == FreeEnd::left && c.a == I.t()) p.ya = p.yb;
    if (free_end == FreeEnd::right && c.b == I.T()) p.yb = p.ya;
    pieces.push_back(std::move(p));
  }

  if (y.is_piecewise_linear()) {
    std::vector<double> knots;
    std::vector<double> values;
    const auto yk = y.knots();
    const auto yv = y.knot_values();
    std::size_t next = 0;
    auto push = [&](double s, std::span<const double> v) {
      if (!knots.empty() && s <= knots.back()) return;
      knots.push_back(s);
      values.insert(values.end(), v.begin(), v.end());
    };
    for (std::size_t i = 0; i < yk.size(); ++i) {
      const double s = yk[i];
      while (next < pieces.size() && pieces[next].b <= s) {
        push(pieces[next].a, pieces[next].ya);
        push(pieces[next].b, pieces[next].yb);
        ++next;
      }
      if (next < pieces.size() && s >= pieces[next].a) {
        if (s == pieces[next].a) push(s, pieces[next].ya);
        continue;
      }
      push(s, std::span<const double>(yv.data() + i * n, n));
    }
    while (next < pieces.size()) {
      push(pieces[next].a, pieces[next].ya);
      push(pieces[next].b, pieces[next].yb);
      ++next;
    }
    return Trajectory::piecewise_linear(std::move(knots), std::move(values), n);
  }

  std::vector<double> breaks(y.breakpoints().begin(), y.breakpoints().end());
  for (const Piece& p : pieces) {
    breaks.push_back(p.a);
    breaks.push_back(p.b);
  }
  auto shared = std::make_shared<const std::vector<Piece>>(std::move(pieces));
  const double T = I.T();
  auto find = [shared, T](double s) -> const Piece* {
    const auto& ps = *shared;
    // The closing end T belongs to a last component touching it, so that a
    // truncated free end keeps its constant value there.
    if (!ps.empty() && ps.back().b == T && s >= T) return &ps.back();
    auto it = std::upper_bound(ps.begin(), ps.end(), s,
                               [](double v, const Piece& p) { return v < p.b; });
    if (it == ps.end() || !(it->a <= s && s < it->b)) return nullptr;
    return &*it;
  };
  VectorFn value = [y, find](double s, std::span<double> out) {
    const Piece* p = find(s);
    if (p == nullptr || s == p->a) {
      if (p != nullptr) {
        std::copy(p->ya.begin(), p->ya.end(), out.begin());
        return;
      }
      y.value(s, out);
      return;
    }
    const double w = (s - p->a) / (p->b - p->a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p->ya[i] + w * (p->yb[i] - p->ya[i]);
  };
  VectorFn deriv = [y, find](double s, std::span<double> out) {
    const Piece* p = find(s);
    if (p == nullptr) {
      y.derivative(s, out);
      return;
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (p->yb[i] - p->ya[i]) / (p->b - p->a);
  };
  return Trajectory::closed_form(I, n, std::move(value), std::move(deriv), std::move(breaks),
                                 "skeleton");
}

}  // namespace lavgap
