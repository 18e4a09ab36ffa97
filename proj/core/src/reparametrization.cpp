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

#include "lavgap/reparametrization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lavgap {

namespace {

void require_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw std::invalid_argument(std::string(what) + " not finite");
    if (i > 0 && !(v[i - 1] < v[i])) {
      throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
  }
}

struct Segment {
  double a, b, slope;
};

// Cells of I with the given slope on A, 1/2 on Sigma and 1 elsewhere;
// adjacent cells with equal slope are merged.
std::vector<Segment> segments(const Interval& I, const IntervalUnion& A,
                              std::span<const double> slopes, const IntervalUnion& Sigma,
                              double nu0) {
  if (!(nu0 > 0.0) || !std::isfinite(nu0)) throw std::invalid_argument("phi: nu0 must be > 0");
  if (slopes.size() != A.size()) {
    throw std::invalid_argument("phi: one slope per component of A is required");
  }
  struct Piece {
    Component c;
    double slope;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < A.size(); ++k) {
    if (!(slopes[k] >= 0.0)) throw std::invalid_argument("phi: component slopes must be >= 0");
    pieces.push_back({A.components()[k], std::max(slopes[k] / nu0, 1.0)});
  }
  for (const Component& c : Sigma.components()) pieces.push_back({c, 0.5});
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.c.a < y.c.a; });
  std::vector<Segment> out;
  auto add = [&](double a, double b, double slope) {
    if (!(a < b)) return;
    if (!out.empty() && out.back().slope == slope && out.back().b == a) {
      out.back().b = b;
    } else {
      out.push_back({a, b, slope});
    }
  };
  double cursor = I.t();
  for (const Piece& p : pieces) {
    if (p.c.a < cursor || p.c.b > I.T() || p.c.a < I.t()) {
      throw std::invalid_argument("phi: A and Sigma must be disjoint subsets of I");
    }
    add(cursor, p.c.a, 1.0);
    add(p.c.a, p.c.b, p.slope);
    cursor = p.c.b;
  }
  add(cursor, I.T(), 1.0);
  return out;
}

void split(const std::vector<Segment>& segs, std::vector<double>& b, std::vector<double>& w) {
  b.clear();
  w.clear();
  for (const Segment& s : segs) {
    b.push_back(s.a);
    w.push_back((s.b - s.a) * s.slope);
  }
  b.push_back(segs.back().b);
}

}  // namespace

Reparametrization::Reparametrization() : b_{0.0, 1.0}, c_{0.0, 1.0} {}

Reparametrization::Reparametrization(std::vector<double> b, std::vector<double> c, Anchor anchor)
    : b_(std::move(b)), c_(std::move(c)), anchor_(anchor) {
  if (b_.size() < 2 || b_.size() != c_.size()) {
    throw std::invalid_argument("Reparametrization: need matching breakpoints and values");
  }
  require_increasing(b_, "Reparametrization breakpoints");
  require_increasing(c_, "Reparametrization values");
}

Reparametrization Reparametrization::identity(const Interval& I) {
  return Reparametrization({I.t(), I.T()}, {I.t(), I.T()}, Anchor::left);
}

std::size_t Reparametrization::cell(double s) const {
  auto it = std::upper_bound(b_.begin(), b_.end(), s);
  if (it == b_.begin()) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(it - b_.begin()) - 1, b_.size() - 2);
}

double Reparametrization::operator()(double s) const {
  s = std::clamp(s, b_.front(), b_.back());
  const std::size_t k = cell(s);
  if (s == b_[k]) return c_[k];
  if (s == b_[k + 1]) return c_[k + 1];
  if (b_[k] == c_[k] && b_[k + 1] == c_[k + 1]) return s;
  return c_[k] + (s - b_[k]) * ((c_[k + 1] - c_[k]) / (b_[k + 1] - b_[k]));
}

double Reparametrization::slope(double s) const {
  const std::size_t k = cell(std::clamp(s, b_.front(), b_.back()));
  if (b_[k] == c_[k] && b_[k + 1] == c_[k + 1]) return 1.0;
  return (c_[k + 1] - c_[k]) / (b_[k + 1] - b_[k]);
}

std::vector<double> Reparametrization::slopes() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < b_.size(); ++k) {
    out.push_back((c_[k + 1] - c_[k]) / (b_[k + 1] - b_[k]));
  }
  return out;
}

Reparametrization Reparametrization::inverse() const {
  return Reparametrization(c_, b_, anchor_);
}

Reparametrization build_phi_initial(const Interval& I, const IntervalUnion& A,
                                    std::span<const double> component_slopes, double nu0) {
  std::vector<double> b, w;
  split(segments(I, A, component_slopes, {}, nu0), b, w);
  std::vector<double> c(b.size());
  c[0] = I.t();
  for (std::size_t k = 0; k < w.size(); ++k) c[k + 1] = c[k] + w[k];
  return Reparametrization(std::move(b), std::move(c), Reparametrization::Anchor::left);
}

Reparametrization build_phi_final(const Interval& I, const IntervalUnion& A,
                                  std::span<const double> component_slopes, double nu0) {
  std::vector<double> b, w;
  split(segments(I, A, component_slopes, {}, nu0), b, w);
  std::vector<double> c(b.size());
  c.back() = I.T();
  for (std::size_t k = w.size(); k-- > 0;) c[k] = c[k + 1] - w[k];
  return Reparametrization(std::move(b), std::move(c), Reparametrization::Anchor::right);
}

TwoEndpointPhi build_phi_two_endpoint(const Interval& I, const IntervalUnion& A,
                                      std::span<const double> component_slopes,
                                      const IntervalUnion& Sigma, double nu0) {
  if (!A.intersect(Sigma).empty()) throw std::invalid_argument("phi: Sigma meets A");
  std::vector<double> b, w;
  split(segments(I, A, component_slopes, Sigma, nu0), b, w);
  std::vector<double> c(b.size());
  c[0] = I.t();
  for (std::size_t k = 0; k < w.size(); ++k) c[k + 1] = c[k] + w[k];
  const double residual = c.back() - I.T();
  if (std::abs(residual) > 1e-9 * I.length()) {
    throw std::invalid_argument("phi: mass balance violated, phi(T) - T = " +
                                std::to_string(residual));
  }
  c.back() = I.T();
  return {Reparametrization(std::move(b), std::move(c), Reparametrization::Anchor::left),
          residual};
}

double excess_length(const IntervalUnion& A, std::span<const double> component_slopes,
                     double nu0) {
  if (!(nu0 > 0.0)) throw std::invalid_argument("excess_length: nu0 must be > 0");
  double e = 0.0;
  for (std::size_t k = 0; k < A.size(); ++k) {
    e += A.components()[k].length() * (std::max(component_slopes[k] / nu0, 1.0) - 1.0);
  }
  return e;
}

IntervalUnion preimage(const Trajectory& y, double lo, double hi, const Grid& grid) {
  if (y.dimension() != 1) throw std::invalid_argument("preimage: scalar trajectories only");
  auto inside = [&](double s) {
    const double v = y.value1(s);
    return lo < v && v < hi;
  };
  // Point in [out, in] closest to the crossing that is still inside.
  auto crossing = [&](double out, double in) {
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (out + in);
      if (mid == out || mid == in) break;
      (inside(mid) ? in : out) = mid;
    }
    return in;
  };
  const auto nodes = grid.nodes();
  std::vector<char> flag(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) flag[k] = inside(nodes[k]);
  std::vector<Component> comps;
  std::size_t k = 0;
  while (k < nodes.size()) {
    if (!flag[k]) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < nodes.size() && flag[j + 1]) ++j;
    const double a = k == 0 ? nodes[0] : crossing(nodes[k - 1], nodes[k]);
    const double b = j + 1 == nodes.size() ? nodes[j] : crossing(nodes[j + 1], nodes[j]);
    if (a < b) comps.push_back({a, b});
    k = j + 1;
  }
  return IntervalUnion::normalized(std::move(comps));
}

IntervalUnion select_sigma(const Trajectory& y, const Component& U, const IntervalUnion& A_h,
                           const IntervalUnion& A_hbar, double target, const Grid& grid) {
  if (!(target >= 0.0)) throw std::invalid_argument("select_sigma: target must be >= 0");
  if (target == 0.0) return {};
  const IntervalUnion room = preimage(y, U.a, U.b, grid).subtract(A_h.unite(A_hbar));
  const double need = 2.0 * target;
  if (room.measure() < need) {
    throw InsufficientRoomError("increase h or enlarge U_y: need " + std::to_string(need) +
                                ", available " + std::to_string(room.measure()));
  }
  std::vector<Component> out;
  double remaining = need;
  for (const Component& c : room.components()) {
    if (remaining <= 0.0) break;
    if (c.length() <= remaining) {
      out.push_back(c);
      remaining -= c.length();
    } else {
      out.push_back({c.a, c.a + remaining});
      remaining = 0.0;
    }
  }
  return IntervalUnion(std::move(out));
}

Trajectory reparametrized(const Trajectory& z, const Reparametrization& psi) {
  const Interval I = z.interval();
  const Interval D = psi.domain();
  const double margin = 1e-9 * I.length();
  if (D.t() > I.t() + margin || D.T() < I.T() - margin) {
    throw std::invalid_argument("reparametrized: psi is not defined on all of I");
  }
  const Reparametrization phi = psi.inverse();
  std::vector<double> cuts;
  for (double s : psi.breakpoints()) cuts.push_back(s);
  for (double s : z.breakpoints()) cuts.push_back(phi(s));

  if (z.is_piecewise_linear()) {
    for (double s : z.knots()) cuts.push_back(phi(s));
    cuts.push_back(I.t());
    cuts.push_back(I.T());
    std::erase_if(cuts, [&](double s) { return !(s >= I.t() && s <= I.T()); });
    std::sort(cuts.begin(), cuts.end());
    const double gap = 1e-14 * I.length();
    std::vector<double> knots;
    for (double s : cuts) {
      if (knots.empty() || s - knots.back() > gap) knots.push_back(s);
    }
    if (knots.back() != I.T()) knots.back() = I.T();
    const std::size_t n = z.dimension();
    std::vector<double> values(knots.size() * n);
    for (std::size_t k = 0; k < knots.size(); ++k) {
      z.value(psi(knots[k]), std::span<double>(values.data() + k * n, n));
    }
    return Trajectory::piecewise_linear(std::move(knots), std::move(values), n);
  }

  VectorFn value = [z, psi](double s, std::span<double> out) { z.value(psi(s), out); };
  VectorFn deriv = [z, psi](double s, std::span<double> out) {
    z.derivative(psi(s), out);
    const double k = psi.slope(s);
    for (double& v : out) v *= k;
  };
  return Trajectory::closed_form(I, z.dimension(), std::move(value), std::move(deriv),
                                 std::move(cuts), "reparametrized");
}

}  // namespace lavgap
