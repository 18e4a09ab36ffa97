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

#include "lavgap/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lavgap {

struct Trajectory::Impl {
  Kind kind;
  Interval I;
  std::size_t n;
  std::string name;
  VectorFn vf;
  VectorFn df;
  ScalarFn sf;
  ScalarFn sdf;
  std::vector<double> breaks;
  std::vector<double> knots;
  std::vector<double> values;

  double admit(double s) const {
    const double margin = 1e-9 * I.length();
    if (!(s >= I.t() - margin && s <= I.T() + margin)) {
      throw std::out_of_range("Trajectory: s=" + std::to_string(s) + " outside [" +
                              std::to_string(I.t()) + ", " + std::to_string(I.T()) + "]");
    }
    return I.clamp(s);
  }

  std::size_t cell(double s) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), s);
    if (it == knots.begin()) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(it - knots.begin()) - 1,
                                 knots.size() - 2);
  }
};

namespace {

std::vector<double> clean_breaks(const Interval& I, std::vector<double> b) {
  std::erase_if(b, [&](double s) { return !(s > I.t() && s < I.T()); });
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

Trajectory::Trajectory() : Trajectory(piecewise_linear({0.0, 1.0}, {0.0, 0.0}, 1)) {}

Trajectory Trajectory::closed_form(const Interval& I, std::size_t dimension, VectorFn value,
                                   VectorFn derivative, std::vector<double> breakpoints,
                                   std::string name) {
  if (dimension == 0) throw std::invalid_argument("Trajectory: dimension must be >= 1");
  if (!value || !derivative) throw std::invalid_argument("Trajectory: empty function");
  auto impl = std::make_shared<Impl>(Impl{Kind::closed_form, I, dimension, std::move(name),
                                          std::move(value), std::move(derivative), {}, {},
                                          clean_breaks(I, std::move(breakpoints)), {}, {}});
  return Trajectory(std::move(impl));
}

Trajectory Trajectory::scalar(const Interval& I, ScalarFn value, ScalarFn derivative,
                              std::vector<double> breakpoints, std::string name) {
  if (!value || !derivative) throw std::invalid_argument("Trajectory: empty function");
  VectorFn vf = [value](double s, std::span<double> out) { out[0] = value(s); };
  VectorFn df = [derivative](double s, std::span<double> out) { out[0] = derivative(s); };
  auto impl = std::make_shared<Impl>(Impl{Kind::closed_form, I, 1, std::move(name), std::move(vf),
                                          std::move(df), std::move(value), std::move(derivative),
                                          clean_breaks(I, std::move(breakpoints)), {}, {}});
  return Trajectory(std::move(impl));
}

Trajectory Trajectory::piecewise_linear(std::vector<double> knots, std::vector<double> values,
                                        std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("Trajectory: dimension must be >= 1");
  Grid g(knots);  // validates ordering
  if (values.size() != knots.size() * dimension) {
    throw std::invalid_argument("Trajectory: values must hold knots*dimension entries");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("Trajectory: non-finite knot value");
  }
  Interval I = g.interval();
  std::vector<double> breaks(knots.begin() + 1, knots.end() - 1);
  auto impl = std::make_shared<Impl>(Impl{Kind::piecewise_linear, I, dimension, {}, {}, {}, {},
                                          {}, std::move(breaks), std::move(knots),
                                          std::move(values)});
  return Trajectory(std::move(impl));
}

Trajectory Trajectory::sampled(const Grid& grid, std::vector<double> values,
                               std::size_t dimension) {
  std::vector<double> knots(grid.nodes().begin(), grid.nodes().end());
  Trajectory pl = piecewise_linear(std::move(knots), std::move(values), dimension);
  auto impl = std::make_shared<Impl>(*pl.impl_);
  impl->kind = Kind::sampled;
  return Trajectory(std::move(impl));
}

Trajectory::Kind Trajectory::kind() const { return impl_->kind; }
const Interval& Trajectory::interval() const { return impl_->I; }
std::size_t Trajectory::dimension() const { return impl_->n; }
const std::string& Trajectory::name() const { return impl_->name; }

void Trajectory::value(double s, std::span<double> out) const {
  const Impl& m = *impl_;
  s = m.admit(s);
  if (m.kind == Kind::closed_form) {
    m.vf(s, out);
    return;
  }
  const std::size_t k = m.cell(s);
  const double x0 = m.knots[k];
  const double x1 = m.knots[k + 1];
  const double* v0 = &m.values[k * m.n];
  const double* v1 = &m.values[(k + 1) * m.n];
  if (s == x0) {
    std::copy(v0, v0 + m.n, out.begin());
    return;
  }
  if (s == x1) {
    std::copy(v1, v1 + m.n, out.begin());
    return;
  }
  const double w = (s - x0) / (x1 - x0);
  for (std::size_t i = 0; i < m.n; ++i) out[i] = v0[i] + w * (v1[i] - v0[i]);
}

void Trajectory::derivative(double s, std::span<double> out) const {
  const Impl& m = *impl_;
  s = m.admit(s);
  if (m.kind == Kind::closed_form) {
    m.df(s, out);
    return;
  }
  const std::size_t k = m.cell(s);
  const double dx = m.knots[k + 1] - m.knots[k];
  for (std::size_t i = 0; i < m.n; ++i) {
    out[i] = (m.values[(k + 1) * m.n + i] - m.values[k * m.n + i]) / dx;
  }
}

std::vector<double> Trajectory::value(double s) const {
  std::vector<double> out(impl_->n);
  value(s, out);
  return out;
}

std::vector<double> Trajectory::derivative(double s) const {
  std::vector<double> out(impl_->n);
  derivative(s, out);
  return out;
}

double Trajectory::value1(double s) const {
  if (impl_->n != 1) throw std::logic_error("Trajectory::value1 on a vector trajectory");
  if (impl_->sf) return impl_->sf(impl_->admit(s));
  double v;
  value(s, std::span<double>(&v, 1));
  return v;
}

double Trajectory::derivative1(double s) const {
  if (impl_->n != 1) throw std::logic_error("Trajectory::derivative1 on a vector trajectory");
  if (impl_->sdf) return impl_->sdf(impl_->admit(s));
  double v;
  derivative(s, std::span<double>(&v, 1));
  return v;
}

std::span<const double> Trajectory::breakpoints() const { return impl_->breaks; }
std::span<const double> Trajectory::knots() const { return impl_->knots; }
std::span<const double> Trajectory::knot_values() const { return impl_->values; }

double Trajectory::lipschitz_constant() const {
  const Impl& m = *impl_;
  if (m.kind == Kind::closed_form) {
    throw std::logic_error("Trajectory::lipschitz_constant needs a piecewise-linear trajectory");
  }
  double L = 0.0;
  for (std::size_t k = 0; k + 1 < m.knots.size(); ++k) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
      const double d = m.values[(k + 1) * m.n + i] - m.values[k * m.n + i];
      sq += d * d;
    }
    L = std::max(L, std::sqrt(sq) / (m.knots[k + 1] - m.knots[k]));
  }
  return L;
}

double lipschitz_estimate(const Trajectory& y, const Grid& g) {
  const std::size_t n = y.dimension();
  std::vector<double> a(n), b(n);
  y.value(g[0], a);
  double L = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) {
    y.value(g[k], b);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) sq += (b[i] - a[i]) * (b[i] - a[i]);
    L = std::max(L, std::sqrt(sq) / (g[k] - g[k - 1]));
    std::swap(a, b);
  }
  return L;
}

Trajectory interpolate(const Trajectory& y, const Grid& g) {
  const std::size_t n = y.dimension();
  std::vector<double> values(g.size() * n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    y.value(g[k], std::span<double>(values.data() + k * n, n));
  }
  return Trajectory::piecewise_linear(std::vector<double>(g.nodes().begin(), g.nodes().end()),
                                      std::move(values), n);
}

}  // namespace lavgap
