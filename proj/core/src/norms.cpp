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

#include "lavgap/norms.hpp"

#include "small_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lavgap {

namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("norm: need finite p >= 1");
}

std::vector<double> cut_points(const Trajectory& y, const Grid& g) {
  std::vector<double> pts(y.breakpoints().begin(), y.breakpoints().end());
  pts.insert(pts.end(), g.nodes().begin(), g.nodes().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double euclid(std::span<const double> v) {
  if (v.size() == 1) return std::abs(v[0]);
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Integrates |f|^p where f writes an n-vector, then takes the 1/p power.
ExtendedValue lp_of(const Interval& I, std::size_t n, std::span<const double> cuts,
                    std::span<const double> graded, double p, const QuadratureSpec& q,
                    const std::function<void(double, std::span<double>)>& f) {
  Integrand g = [&](double s) {
    detail::SmallBuffer buf(n);
    f(s, buf.span());
    const double r = euclid(buf.span());
    if (std::isnan(r)) return Sample{0.0, true, false};
    return Sample{p == 1.0 ? r : std::pow(r, p), false, false};
  };
  if (graded.size() > q.graded_point_limit) graded = {};
  QuadratureResult res = integrate(g, I.t(), I.T(), cuts, q, graded);
  if (res.value.is_infinite()) return res.value;
  const double v = res.value.value();
  return ExtendedValue::from_double(p == 1.0 ? v : std::pow(v, 1.0 / p));
}

}  // namespace

double sup_norm(const Trajectory& y, const Grid& g) {
  std::vector<double> buf(y.dimension());
  double m = 0.0;
  for (double s : g.nodes()) {
    y.value(s, buf);
    m = std::max(m, euclid(buf));
  }
  return m;
}

ExtendedValue lp_norm_derivative(const Trajectory& y, double p, const Grid& g,
                                 const QuadratureSpec& q) {
  require_p(p);
  const auto cuts = cut_points(y, g);
  return lp_of(y.interval(), y.dimension(), cuts, y.breakpoints(), p, q,
               [&](double s, std::span<double> out) { y.derivative(s, out); });
}

ExtendedValue lp_norm(const Trajectory& y, double p, const Grid& g, const QuadratureSpec& q) {
  require_p(p);
  const auto cuts = cut_points(y, g);
  return lp_of(y.interval(), y.dimension(), cuts, y.breakpoints(), p, q,
               [&](double s, std::span<double> out) { y.value(s, out); });
}

ExtendedValue sobolev_distance(const Trajectory& a, const Trajectory& b, double p, const Grid& g,
                               const QuadratureSpec& q) {
  require_p(p);
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("sobolev_distance: dimension mismatch");
  }
  if (!(a.interval() == b.interval())) {
    throw std::invalid_argument("sobolev_distance: interval mismatch");
  }
  const std::size_t n = a.dimension();
  auto cuts = cut_points(a, g);
  cuts.insert(cuts.end(), b.breakpoints().begin(), b.breakpoints().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> graded(a.breakpoints().begin(), a.breakpoints().end());
  graded.insert(graded.end(), b.breakpoints().begin(), b.breakpoints().end());

  auto diff = [n](const Trajectory& x, const Trajectory& y, bool deriv) {
    return [&x, &y, n, deriv](double s, std::span<double> out) {
      detail::SmallBuffer buf(n);
      auto tmp = buf.span();
      if (deriv) {
        x.derivative(s, out);
        y.derivative(s, tmp);
      } else {
        x.value(s, out);
        y.value(s, tmp);
      }
      for (std::size_t i = 0; i < n; ++i) {
        // inf - inf at a shared singular point is a zero difference.
        out[i] = out[i] == tmp[i] ? 0.0 : out[i] - tmp[i];
      }
    };
  };
  const ExtendedValue v = lp_of(a.interval(), n, cuts, graded, p, q, diff(a, b, false));
  const ExtendedValue d = lp_of(a.interval(), n, cuts, graded, p, q, diff(a, b, true));
  return v + d;
}

}  // namespace lavgap
