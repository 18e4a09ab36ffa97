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

#include "lavgap/gapsearch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "lavgap/energy.hpp"
#include "lavgap/parallel.hpp"

namespace lavgap {

namespace {

constexpr int kGauss = 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Lexicographic objective: cells with infinite energy first.
struct Objective {
  std::size_t infinite = 0;
  double finite = 0.0;

  friend bool operator<(const Objective& a, const Objective& b) {
    if (a.infinite != b.infinite) return a.infinite < b.infinite;
    return a.finite < b.finite;
  }
  ExtendedValue value() const {
    return infinite > 0 ? ExtendedValue::infinity() : ExtendedValue::from_double(finite);
  }
};

struct CellValue {
  bool infinite = false;
  double value = 0.0;
};

// Knot values with cached per-cell energies.
class State {
 public:
  State(const ProductLagrangian& lag, const SearchSpace& space)
      : lag_(lag),
        n_(space.dimension),
        cells_(space.knot_count - 1),
        t_(space.interval.t()),
        h_(space.interval.length() / static_cast<double>(cells_)),
        values_((cells_ + 1) * n_, 0.0),
        cache_(cells_),
        z_(n_),
        u_(n_) {}

  std::size_t cells() const { return cells_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& at(std::size_t k, std::size_t i) { return values_[k * n_ + i]; }
  double knot(std::size_t k) const {
    return k == cells_ ? t_ + h_ * static_cast<double>(cells_) : t_ + h_ * static_cast<double>(k);
  }

  void refresh() {
    for (std::size_t k = 0; k < cells_; ++k) cache_[k] = cell(k);
  }

  Objective total() const {
    Objective o;
    for (const CellValue& c : cache_) {
      if (c.infinite) {
        ++o.infinite;
      } else {
        o.finite += c.value;
      }
    }
    return o;
  }

  // Change of the objective if knot k, component i, takes value v.
  // Leaves the state unchanged; `apply` commits.
  std::pair<Objective, Objective> trial(std::size_t k, std::size_t i, double v,
                                        CellValue& left, CellValue& right) {
    const double old = at(k, i);
    at(k, i) = v;
    Objective before, after;
    auto account = [](Objective& o, const CellValue& c) {
      if (c.infinite) {
        ++o.infinite;
      } else {
        o.finite += c.value;
      }
    };
    if (k > 0) {
      account(before, cache_[k - 1]);
      left = cell(k - 1);
      account(after, left);
    }
    if (k < cells_) {
      account(before, cache_[k]);
      right = cell(k);
      account(after, right);
    }
    at(k, i) = old;
    return {before, after};
  }

  void apply(std::size_t k, std::size_t i, double v, const CellValue& left,
             const CellValue& right) {
    at(k, i) = v;
    if (k > 0) cache_[k - 1] = left;
    if (k < cells_) cache_[k] = right;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  CellValue cell(std::size_t k) {
    ++evaluations_;
    const double a = knot(k), b = knot(k + 1);
    const double w = b - a;
    const double* y0 = &values_[k * n_];
    const double* y1 = &values_[(k + 1) * n_];
    for (std::size_t i = 0; i < n_; ++i) u_[i] = (y1[i] - y0[i]) / w;
    auto L = [&](double s) {
      const double f = (s - a) / w;
      for (std::size_t i = 0; i < n_; ++i) z_[i] = y0[i] + f * (y1[i] - y0[i]);
      return eval_L(lag_, s, z_, u_);
    };
    // Probes just inside both ends catch infinite values that the Gauss
    // nodes could step over.
    if (L(a + 1e-6 * w).is_infinite() || L(b - 1e-6 * w).is_infinite()) return {true, 0.0};
    using G = boost::math::quadrature::gauss<double, kGauss>;
    const auto& x = G::abscissa();
    const auto& wt = G::weights();
    double sum = 0.0;
    const double mid = 0.5 * (a + b), half = 0.5 * w;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (double sign : {-1.0, 1.0}) {
        if (x[j] == 0.0 && sign > 0.0) continue;
        const ExtendedValue v = L(mid + sign * x[j] * half);
        if (v.is_infinite()) return {true, 0.0};
        sum += wt[j] * v.value();
      }
    }
    return {false, sum * half};
  }

  const ProductLagrangian& lag_;
  std::size_t n_;
  std::size_t cells_;
  double t_;
  double h_;
  std::vector<double> values_;
  std::vector<CellValue> cache_;
  std::vector<double> z_;
  std::vector<double> u_;
  std::size_t evaluations_ = 0;
};

// Clips knot values into the space: pinned ends, reachability of the
// pinned ends and per-cell slope bounds.
void project(std::vector<double>& v, const SearchSpace& space) {
  const std::size_t n = space.dimension;
  const std::size_t N = space.knot_count - 1;
  const double h = space.interval.length() / static_cast<double>(N);
  // A hair inside the bound so that rounding never pushes a slope over it.
  const double M = space.component_bound() * (1.0 - 1e-13);
  const bool left = space.boundary.pins_left();
  const bool right = space.boundary.pins_right();
  for (std::size_t i = 0; i < n; ++i) {
    auto y = [&](std::size_t k) -> double& { return v[k * n + i]; };
    if (!left && right) {
      // Mirror image of the forward pass below.
      y(N) = space.boundary.Y[i];
      for (std::size_t k = N; k-- > 0;) {
        y(k) = std::clamp(y(k), y(k + 1) - M * h, y(k + 1) + M * h);
      }
      if (space.free_end_range) {
        y(0) = std::clamp(y(0), space.free_end_range->a, space.free_end_range->b);
        for (std::size_t k = 1; k < N; ++k) {
          y(k) = std::clamp(y(k), y(k - 1) - M * h, y(k - 1) + M * h);
          y(k) = std::clamp(y(k), y(N) - M * h * static_cast<double>(N - k),
                            y(N) + M * h * static_cast<double>(N - k));
        }
      }
      continue;
    }
    if (left) y(0) = space.boundary.X[i];
    if (!left && !right) y(0) = std::clamp(y(0), -1e300, 1e300);
    for (std::size_t k = 1; k <= N; ++k) {
      double lo = y(k - 1) - M * h, hi = y(k - 1) + M * h;
      if (right) {
        const double r = M * h * static_cast<double>(N - k);
        lo = std::max(lo, space.boundary.Y[i] - r);
        hi = std::min(hi, space.boundary.Y[i] + r);
      }
      y(k) = lo <= hi ? std::clamp(y(k), lo, hi) : 0.5 * (lo + hi);
    }
    if (right) y(N) = space.boundary.Y[i];
    if (!right && space.free_end_range) {
      y(N) = std::clamp(y(N), space.free_end_range->a, space.free_end_range->b);
      for (std::size_t k = N; k-- > 1;) {
        y(k) = std::clamp(y(k), y(k + 1) - M * h, y(k + 1) + M * h);
      }
    }
  }
}

std::vector<double> line_values(const SearchSpace& space) {
  const std::size_t n = space.dimension;
  const std::size_t N = space.knot_count - 1;
  std::vector<double> v((N + 1) * n);
  for (std::size_t k = 0; k <= N; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(N);
    for (std::size_t i = 0; i < n; ++i) {
      switch (space.boundary.kind) {
        case BoundaryData::Kind::both:
          v[k * n + i] = space.boundary.X[i] + f * (space.boundary.Y[i] - space.boundary.X[i]);
          break;
        case BoundaryData::Kind::initial_only: v[k * n + i] = space.boundary.X[i]; break;
        case BoundaryData::Kind::final_only: v[k * n + i] = space.boundary.Y[i]; break;
      }
    }
  }
  return v;
}

std::vector<double> sample_values(const Trajectory& y, const SearchSpace& space) {
  if (y.dimension() != space.dimension) {
    throw std::invalid_argument("search start: dimension mismatch");
  }
  const Grid g = space.knots();
  const std::size_t n = space.dimension;
  std::vector<double> v(g.size() * n);
  const Interval& J = y.interval();
  for (std::size_t k = 0; k < g.size(); ++k) {
    // Starts on another interval are rescaled onto the search interval.
    const double f = (g[k] - g.front()) / (g.back() - g.front());
    y.value(J.t() + f * J.length(), std::span<double>(v.data() + k * n, n));
  }
  for (double& x : v) {
    if (!std::isfinite(x)) x = 0.0;
  }
  return v;
}

Trajectory to_trajectory(const std::vector<double>& v, const SearchSpace& space) {
  const Grid g = space.knots();
  return Trajectory::piecewise_linear(std::vector<double>(g.nodes().begin(), g.nodes().end()), v,
                                      space.dimension);
}

struct RestartOutcome {
  std::vector<double> values;
  Objective start;
  Objective best;
  std::size_t sweeps = 0;
  std::size_t evaluations = 0;
};

RestartOutcome descend(const ProductLagrangian& lag, const SearchSpace& space,
                       std::vector<double> start, const SearchOptions& options) {
  State st(lag, space);
  st.values() = std::move(start);
  st.refresh();
  RestartOutcome out;
  out.start = st.total();

  const std::size_t n = space.dimension;
  const std::size_t N = space.knot_count - 1;
  const double h = space.interval.length() / static_cast<double>(N);
  const double M = space.component_bound() * (1.0 - 1e-13);
  const double cap = M * h;
  const double floor = options.min_step * cap;
  const std::size_t first = space.boundary.pins_left() ? 1 : 0;
  const std::size_t last = space.boundary.pins_right() ? N - 1 : N;
  std::vector<double> step((N + 1) * n, 0.5 * cap);
  CellValue left, right;

  for (; out.sweeps < options.max_sweeps; ++out.sweeps) {
    bool active = false;
    for (std::size_t k = first; k <= last && k <= N; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double& sk = step[k * n + i];
        if (sk < floor) continue;
        active = true;
        double lo = -1e300, hi = 1e300;
        if (k > 0) {
          lo = std::max(lo, st.at(k - 1, i) - cap);
          hi = std::min(hi, st.at(k - 1, i) + cap);
        }
        if (k < N) {
          lo = std::max(lo, st.at(k + 1, i) - cap);
          hi = std::min(hi, st.at(k + 1, i) + cap);
        }
        if ((k == 0 || k == N) && space.free_end_range) {
          lo = std::max(lo, space.free_end_range->a);
          hi = std::min(hi, space.free_end_range->b);
        }
        const double cur = st.at(k, i);
        bool moved = false;
        for (double dir : {1.0, -1.0}) {
          const double v = std::clamp(cur + dir * sk, lo, hi);
          if (v == cur) continue;
          auto [before, after] = st.trial(k, i, v, left, right);
          if (after < before) {
            st.apply(k, i, v, left, right);
            moved = true;
            break;
          }
        }
        sk = moved ? std::min(2.0 * sk, cap) : 0.5 * sk;
      }
    }
    if (!active) break;
  }
  st.refresh();
  out.best = st.total();
  out.values = st.values();
  out.evaluations = st.evaluations();
  return out;
}

}  // namespace

void SearchSpace::validate() const {
  if (knot_count < 2) throw std::invalid_argument("SearchSpace: knot_count must be >= 2");
  if (!(slope_bound > 0.0) || !std::isfinite(slope_bound)) {
    throw std::invalid_argument("SearchSpace: slope_bound must be positive");
  }
  if (dimension == 0) throw std::invalid_argument("SearchSpace: dimension must be >= 1");
  boundary.validate(dimension);
  if (boundary.kind == BoundaryData::Kind::both) {
    for (std::size_t i = 0; i < dimension; ++i) {
      if (std::abs(boundary.Y[i] - boundary.X[i]) > component_bound() * interval.length()) {
        throw InfeasibleSpaceError("SearchSpace: |Y - X| / (T - t) exceeds the slope bound");
      }
    }
  }
  if (free_end_range && !(free_end_range->a <= free_end_range->b)) {
    throw std::invalid_argument("SearchSpace: empty free_end_range");
  }
}

Grid SearchSpace::knots() const { return Grid::uniform(interval, knot_count - 1); }

double SearchSpace::component_bound() const {
  return dimension == 1 ? slope_bound : slope_bound / std::sqrt(static_cast<double>(dimension));
}

SearchSpace make_space(const ProductLagrangian& lag, const BoundaryData& boundary,
                       std::size_t knot_count, double slope_bound) {
  SearchSpace s;
  s.interval = lag.interval;
  s.dimension = lag.dimension;
  s.knot_count = knot_count;
  s.slope_bound = slope_bound;
  s.boundary = boundary;
  return s;
}

Trajectory project_onto(const Trajectory& y, const SearchSpace& space) {
  space.validate();
  std::vector<double> v = sample_values(y, space);
  project(v, space);
  return to_trajectory(v, space);
}

bool is_feasible(const Trajectory& y, const SearchSpace& space) {
  if (!y.is_piecewise_linear() || y.dimension() != space.dimension) return false;
  const std::size_t n = space.dimension;
  const auto knots = y.knots();
  const auto v = y.knot_values();
  const std::size_t N = knots.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (space.boundary.pins_left() && v[i] != space.boundary.X[i]) return false;
    if (space.boundary.pins_right() && v[N * n + i] != space.boundary.Y[i]) return false;
  }
  return y.lipschitz_constant() <= space.slope_bound * (1.0 + 1e-12);
}

SearchResult minimize_lipschitz(const ProductLagrangian& lag, const SearchSpace& space,
                                const SearchOptions& options) {
  space.validate();
  if (space.interval != lag.interval || space.dimension != lag.dimension) {
    throw std::invalid_argument("minimize_lipschitz: space does not match the Lagrangian");
  }
  const std::size_t total = std::max<std::size_t>(options.restarts, 1 + options.starts.size());

  std::vector<RestartOutcome> outcomes(total);
  parallel_for(total, options.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      std::vector<double> start;
      if (r == 0) {
        start = line_values(space);
        project(start, space);
      } else if (r <= options.starts.size()) {
        start = sample_values(options.starts[r - 1], space);
        project(start, space);
      } else {
        std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(r)));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        const double amp = 0.25 * space.component_bound() * space.interval.length();
        for (std::size_t attempt = 0; attempt <= options.redraw_budget; ++attempt) {
          start = line_values(space);
          for (double& x : start) x += amp * unif(rng);
          project(start, space);
          State probe(lag, space);
          probe.values() = start;
          probe.refresh();
          if (probe.total().infinite == 0) break;
        }
      }
      outcomes[r] = descend(lag, space, std::move(start), options);
    }
  });

  SearchResult res;
  std::size_t best = 0;
  for (std::size_t r = 0; r < total; ++r) {
    res.evaluations += outcomes[r].evaluations;
    res.restarts.push_back({outcomes[r].start.value(), outcomes[r].best.value(),
                            outcomes[r].sweeps});
    if (outcomes[r].best < outcomes[best].best) best = r;
  }
  res.trajectory = to_trajectory(outcomes[best].values, space);
  res.value = outcomes[best].best.infinite > 0 ? ExtendedValue::infinity()
                                                : energy(lag, res.trajectory, options.quad);
  return res;
}

std::string to_string(GapVerdict v) {
  switch (v) {
    case GapVerdict::gap_detected: return "GapDetected";
    case GapVerdict::no_gap_evidence: return "NoGapEvidence";
    case GapVerdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

GapVerdict gap_verdict_from_string(const std::string& s) {
  for (GapVerdict v :
       {GapVerdict::gap_detected, GapVerdict::no_gap_evidence, GapVerdict::inconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown gap verdict: " + s);
}

GapEstimate gap_report(const ProductLagrangian& lag, const Trajectory& y,
                       const BoundaryData& boundary, const GapOptions& options) {
  if (options.bounds.empty() || options.knots.empty()) {
    throw std::invalid_argument("gap_report: empty sweep");
  }
  std::vector<double> bounds = options.bounds;
  std::vector<std::size_t> knots = options.knots;
  std::sort(bounds.begin(), bounds.end());
  std::sort(knots.begin(), knots.end());

  GapEstimate est;
  est.F_candidate = energy(lag, y, options.quad);
  est.margin = options.margin_factor * std::max(1.0, est.F_candidate.to_double());
  est.lip_inf = ExtendedValue::infinity();

  // best[j][b]: best trajectory for knots[j] and bounds[b].
  std::vector<std::vector<std::optional<Trajectory>>> best(
      knots.size(), std::vector<std::optional<Trajectory>>(bounds.size()));
  bool have_best = false;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    for (std::size_t b = 0; b < bounds.size(); ++b) {
      SearchSpace space = make_space(lag, boundary, knots[j], bounds[b]);
      {
        SearchOptions so;
        so.restarts = options.restarts;
        so.seed = splitmix64(options.seed + 1000003 * j + b);
        so.workers = options.workers;
        so.max_sweeps = options.max_sweeps;
        so.quad = options.quad;
        so.starts.push_back(y);
        if (b > 0 && best[j][b - 1]) so.starts.push_back(*best[j][b - 1]);
        if (j > 0 && best[j - 1][b]) so.starts.push_back(*best[j - 1][b]);
        SearchResult r;
        try {
          r = minimize_lipschitz(lag, space, so);
        } catch (const InfeasibleSpaceError&) {
          est.lip_inf_per_bound.push_back({bounds[b], knots[j], ExtendedValue::infinity(), 0, 0, 0});
          continue;
        }
        best[j][b] = r.trajectory;
        SweepRow row{bounds[b], knots[j], r.value, r.evaluations, 0, r.restarts.size()};
        for (const auto& rr : r.restarts) row.infinite_restarts += rr.final_value.is_infinite();
        est.lip_inf_per_bound.push_back(row);
        if (!have_best || r.value < est.lip_inf) {
          est.lip_inf = r.value;
          est.best_trajectory = r.trajectory;
          have_best = true;
        }
      }
    }
  }

  // Per knot count, values must not increase with the bound.
  bool monotone = true;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    for (std::size_t b = 1; b < bounds.size(); ++b) {
      const double prev = est.lip_inf_per_bound[j * bounds.size() + b - 1].best_value.to_double();
      const double cur = est.lip_inf_per_bound[j * bounds.size() + b].best_value.to_double();
      if (cur > prev + 1e-9 * std::max(1.0, std::abs(prev))) monotone = false;
    }
  }

  const double F = est.F_candidate.to_double();
  const double lip = est.lip_inf.to_double();
  if (est.F_candidate.is_infinite()) {
    est.verdict = GapVerdict::inconclusive;
    est.detail = "the candidate has infinite energy";
  } else if (lip <= F + est.margin) {
    est.verdict = GapVerdict::no_gap_evidence;
    est.detail = "a Lipschitz trajectory comes within the margin of the candidate";
  } else if (monotone) {
    est.verdict = GapVerdict::gap_detected;
    est.detail = "every Lipschitz value stays above the candidate plus the margin";
  } else {
    est.verdict = GapVerdict::inconclusive;
    est.detail = "values above the margin but not monotone in the slope bound";
  }
  return est;
}

}  // namespace lavgap
