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

#include "lavgap/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lavgap/norms.hpp"
#include "lavgap/parallel.hpp"

namespace lavgap {

Variant variant_for(const BoundaryData& boundary) {
  switch (boundary.kind) {
    case BoundaryData::Kind::initial_only:
      return Variant::initial;
    case BoundaryData::Kind::final_only:
      return Variant::final_endpoint;
    case BoundaryData::Kind::both:
      return Variant::both;
  }
  return Variant::both;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::initial:
      return "initial";
    case Variant::final_endpoint:
      return "final";
    case Variant::both:
      return "both";
  }
  return "both";
}

Variant variant_from_string(const std::string& s) {
  if (s == "initial") return Variant::initial;
  if (s == "final") return Variant::final_endpoint;
  if (s == "both") return Variant::both;
  throw std::invalid_argument("unknown variant '" + s + "' (initial, final or both)");
}

namespace {

double euclid_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

FreeEnd free_end_for(Variant v, bool truncate) {
  if (!truncate) return FreeEnd::none;
  if (v == Variant::initial) return FreeEnd::right;
  if (v == Variant::final_endpoint) return FreeEnd::left;
  return FreeEnd::none;
}

// Quotients of y_h over phi-images of working cells, checked against the
// slope bounds: nu0 on phi(A_h), the slope of y elsewhere, 2 ell on
// phi(Sigma_h).
bool slope_certificate(const Skeleton& sk, const IntervalUnion& Sigma,
                       const Reparametrization& phi, const Trajectory& y_h, double nu0,
                       double slope_bound, double sigma_bound) {
  const Interval& I = y_h.interval();
  std::vector<double> extra;
  for (const Component& c : Sigma.components()) {
    extra.push_back(c.a);
    extra.push_back(c.b);
  }
  const Grid g = sk.working_grid.merged(extra);
  constexpr double kRel = 1e-6;
  std::vector<double> prev = y_h.value(I.clamp(phi(g[0])));
  double prev_p = phi(g[0]);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double p = phi(g[k]);
    std::vector<double> cur = y_h.value(I.clamp(p));
    if (prev_p >= I.t() && p <= I.T() && p > prev_p) {
      const double q = euclid_distance(prev, cur) / (p - prev_p);
      const double mid = 0.5 * (g[k - 1] + g[k]);
      double bound = slope_bound;
      if (Sigma.contains(mid)) bound = sigma_bound;
      else if (sk.A.contains(mid)) bound = nu0;
      if (q > bound * (1.0 + kRel) + 1e-12) return false;
    }
    prev = std::move(cur);
    prev_p = p;
  }
  return true;
}

ConstructionReport run_stage(const ProductLagrangian& lag, const Trajectory& y, Variant variant,
                             const StageParams& params, const Skeleton* hbar_sk, int h,
                             const ConstructionOptions& options) {
  const Interval& I = y.interval();
  SkeletonOptions so = options.skeleton;
  so.free_end = free_end_for(variant, options.truncate_free_end);
  Skeleton sk = affine_skeleton(y, h, so);

  ConstructionReport r;
  r.h = h;
  r.variant = variant;
  r.z_h = sk.z;
  r.A_h = sk.A;
  ConstructionDiagnostics& d = r.diagnostics;
  d.measure_A_h = sk.A.measure();
  d.budget = sk.budget;
  d.level = sk.level;
  d.excess = excess_length(sk.A, sk.component_slopes, params.nu0);

  switch (variant) {
    case Variant::initial:
      r.phi_h = build_phi_initial(I, sk.A, sk.component_slopes, params.nu0);
      break;
    case Variant::final_endpoint:
      r.phi_h = build_phi_final(I, sk.A, sk.component_slopes, params.nu0);
      break;
    case Variant::both: {
      r.Sigma_h = select_sigma(y, *params.U, sk.A, hbar_sk->A, d.excess, sk.working_grid);
      TwoEndpointPhi tp = build_phi_two_endpoint(I, sk.A, sk.component_slopes, r.Sigma_h,
                                                 params.nu0);
      r.phi_h = tp.phi;
      d.mass_balance_residual = tp.balance_residual;
      break;
    }
  }
  r.psi_h = r.phi_h.inverse();
  r.y_h = reparametrized(r.z_h, r.psi_h);
  d.measure_Sigma_h = r.Sigma_h.measure();

  for (std::size_t k = 0; k < sk.A.size(); ++k) {
    const Component& c = sk.A.components()[k];
    d.measure_phi_A_h += r.phi_h(c.b) - r.phi_h(c.a);
    d.beta_sum += sk.beta[k];
  }
  d.image_bound = d.beta_sum / params.nu0 + d.measure_A_h;
  if (variant != Variant::both) {
    d.mass_balance_residual = (r.phi_h(I.T()) - r.phi_h(I.t())) - I.length();
  }

  const std::vector<double> yt = y.value(I.t()), yT = y.value(I.T());
  d.endpoint_residual_left = euclid_distance(r.y_h.value(I.t()), yt);
  d.endpoint_residual_right = euclid_distance(r.y_h.value(I.T()), yT);
  if (variant == Variant::initial) d.free_end_drift = d.endpoint_residual_right;
  if (variant == Variant::final_endpoint) d.free_end_drift = d.endpoint_residual_left;

  const std::size_t m = std::max<std::size_t>(options.inverse_check_points, 2);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = I.t() + I.length() * static_cast<double>(i) / static_cast<double>(m - 1);
    d.inverse_residual = std::max(d.inverse_residual, std::abs(r.psi_h(r.phi_h(s)) - s));
  }

  if (r.y_h.is_piecewise_linear()) {
    d.lipschitz_constant_y_h = r.y_h.lipschitz_constant();
  } else {
    std::vector<double> pts;
    for (double s : sk.working_grid.nodes()) {
      const double p = r.phi_h(s);
      if (p >= I.t() && p <= I.T()) pts.push_back(p);
    }
    d.lipschitz_constant_y_h = lipschitz_estimate(r.y_h, Grid::uniform(I, 4096).merged(pts));
  }
  const double ell = params.ell > 0.0 ? params.ell : (hbar_sk ? hbar_sk->ell : sk.ell);
  d.slope_bound = std::max(params.nu0, sk.ell);
  d.sigma_slope_bound = 2.0 * ell;
  d.slope_certificate = slope_certificate(sk, r.Sigma_h, r.phi_h, r.y_h, params.nu0,
                                          d.slope_bound, d.sigma_slope_bound);

  d.sobolev_distance_to_y =
      sobolev_distance(r.y_h, y, lag.p, Grid::uniform(I, options.distance_cells), options.quad);
  d.energy_y_h = energy(lag, r.y_h, options.quad);
  return r;
}

}  // namespace

std::pair<int, double> choose_hbar(const Trajectory& y, const Component& U,
                                   const SkeletonOptions& options, int h_limit) {
  const Grid grid = working_grid(y, options);
  const double room = preimage(y, U.a, U.b, grid).measure();
  for (int h = 1; h <= h_limit; ++h) {
    Skeleton sk = affine_skeleton(y, h, options);
    if (room > 10.0 * sk.A.measure()) return {h, sk.ell};
  }
  throw InsufficientRoomError("no h <= " + std::to_string(h_limit) +
                              " with |y^{-1}(U_y)| > 10 |A_h|; enlarge U_y");
}

namespace {

struct Prepared {
  StageParams params;
  ConstructionOptions options;
  std::optional<Skeleton> hbar_sk;
  double preimage_measure = 0.0;
};

Prepared prepare(const Trajectory& y, Variant variant, const StageParams& params,
                 const ConstructionOptions& options) {
  Prepared p{params, options, std::nullopt, 0.0};
  if (!p.options.skeleton.l1_derivative) {
    const Interval& I = y.interval();
    const ExtendedValue l1 =
        lp_norm_derivative(y, 1.0, Grid({I.t(), I.T()}), p.options.skeleton.quad);
    if (l1.is_infinite()) throw NotW11Error();
    p.options.skeleton.l1_derivative = l1.value();
  }
  if (variant != Variant::both) return p;
  if (!params.U) throw std::invalid_argument("construct_sequence: both ends need a window U_y");
  if (y.dimension() != 1) {
    throw std::invalid_argument("construct_sequence: two-endpoint variant needs scalar y");
  }
  p.preimage_measure =
      preimage(y, params.U->a, params.U->b, working_grid(y, p.options.skeleton)).measure();
  if (params.hbar <= 0) {
    auto [hb, ell] = choose_hbar(y, *params.U, p.options.skeleton);
    p.params.hbar = hb;
    if (params.ell <= 0.0) p.params.ell = ell;
  }
  p.hbar_sk = affine_skeleton(y, p.params.hbar, p.options.skeleton);
  if (p.params.ell <= 0.0) p.params.ell = p.hbar_sk->ell;
  return p;
}

bool sigma_fits(const Trajectory& y, const Prepared& p, int h) {
  SkeletonOptions so = p.options.skeleton;
  so.free_end = free_end_for(Variant::both, p.options.truncate_free_end);
  const Skeleton sk = affine_skeleton(y, h, so);
  const double excess = excess_length(sk.A, sk.component_slopes, p.params.nu0);
  const IntervalUnion room = preimage(y, p.params.U->a, p.params.U->b, sk.working_grid)
                                 .subtract(sk.A.unite(p.hbar_sk->A));
  return room.measure() >= 2.0 * excess;
}

int first_fit(const Trajectory& y, const Prepared& p, int h_from, int h_limit) {
  for (int h = std::max(h_from, 1); h <= h_limit; ++h) {
    if (sigma_fits(y, p, h)) return h;
  }
  return 0;
}

}  // namespace

int smallest_usable_h(const Trajectory& y, const StageParams& params,
                      const ConstructionOptions& options, int h_limit) {
  if (!(params.nu0 > 0.0)) throw std::invalid_argument("smallest_usable_h: nu0 must be > 0");
  return first_fit(y, prepare(y, Variant::both, params, options), 1, h_limit);
}

ConstructionSequence construct_sequence(const ProductLagrangian& lag, const Trajectory& y,
                                        const BoundaryData& boundary, const StageParams& params,
                                        int h_max, const ConstructionOptions& options) {
  if (options.first_h < 1 || h_max < options.first_h) {
    throw std::invalid_argument("construct_sequence: need 1 <= first_h <= h_max");
  }
  if (!(params.nu0 > 0.0)) throw std::invalid_argument("construct_sequence: nu0 must be > 0");
  if (!(y.interval() == lag.interval) || y.dimension() != lag.dimension) {
    throw std::invalid_argument("construct_sequence: trajectory does not match the Lagrangian");
  }
  boundary.validate(lag.dimension);

  ConstructionSequence seq;
  seq.variant = variant_for(boundary);
  seq.energy_y = energy(lag, y, options.quad);
  if (seq.energy_y.is_infinite()) {
    throw std::invalid_argument("construct_sequence: energy of y is infinite");
  }
  const Prepared prep = prepare(y, seq.variant, params, options);
  seq.params = prep.params;
  seq.preimage_measure = prep.preimage_measure;

  const int first = options.first_h;
  seq.reports.resize(static_cast<std::size_t>(h_max - first + 1));
  const Skeleton* hb = prep.hbar_sk ? &*prep.hbar_sk : nullptr;
  try {
    parallel_for(seq.reports.size(), prep.options.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        seq.reports[i] = run_stage(lag, y, seq.variant, seq.params, hb,
                                   first + static_cast<int>(i), prep.options);
      }
    });
  } catch (const InsufficientRoomError& e) {
    constexpr int kLimit = 64;
    const int usable = first_fit(y, prep, 1, kLimit);
    std::ostringstream os;
    os << e.what();
    if (usable > 0) {
      os << " (smallest usable h is " << usable << ")";
    } else {
      os << " (no usable h <= " << kLimit << ")";
    }
    throw InsufficientRoomError(os.str());
  }
  return seq;
}

std::vector<std::string> verify_sequence(const ConstructionSequence& seq, const Trajectory& y,
                                         const SequenceTolerances& tol) {
  std::vector<std::string> failures;
  const Interval& I = y.interval();
  auto fail = [&](int h, const std::string& what) {
    failures.push_back("h=" + std::to_string(h) + ": " + what);
  };
  for (const ConstructionReport& r : seq.reports) {
    const ConstructionDiagnostics& d = r.diagnostics;
    if (d.measure_A_h > I.length() / (2.0 * (r.h + 1)) * (1.0 + tol.measure_relative)) {
      fail(r.h, "|A_h| exceeds (T-t)/(2(h+1))");
    }
    if (d.measure_phi_A_h > d.image_bound * (1.0 + tol.measure_relative) + 1e-15) {
      fail(r.h, "|phi(A_h)| exceeds beta_sum/nu0 + |A_h|");
    }
    if (d.inverse_residual > tol.inverse * I.length()) fail(r.h, "psi(phi(s)) != s");
    const bool left = seq.variant != Variant::final_endpoint;
    const bool right = seq.variant != Variant::initial;
    if (left && d.endpoint_residual_left > tol.endpoint) fail(r.h, "left endpoint moved");
    if (right && d.endpoint_residual_right > tol.endpoint) fail(r.h, "right endpoint moved");
    if (seq.variant == Variant::both) {
      if (std::abs(d.mass_balance_residual) > tol.mass_balance * I.length()) {
        fail(r.h, "mass balance violated");
      }
      if (std::abs(d.measure_Sigma_h - 2.0 * d.excess) >
          tol.sigma_relative * std::max(2.0 * d.excess, 1e-300)) {
        fail(r.h, "|Sigma_h| differs from twice the excess");
      }
    }
    if (!d.slope_certificate) fail(r.h, "slope certificate violated");
    if (d.energy_y_h.is_infinite()) fail(r.h, "energy of y_h is infinite");
  }
  if (!seq.reports.empty()) {
    const ConstructionReport& last = seq.reports.back();
    const ExtendedValue dist = last.diagnostics.sobolev_distance_to_y;
    if (!(dist.to_double() < tol.final_distance)) {
      fail(last.h, "Sobolev distance " + dist.to_string() + " not below " +
                       std::to_string(tol.final_distance));
    }
    if (seq.reports.size() >= 2) {
      const ExtendedValue before = seq.reports[seq.reports.size() - 2].diagnostics.sobolev_distance_to_y;
      if (dist > before) fail(last.h, "Sobolev distance increased at the last stage");
    }
    if (seq.energy_y.is_finite()) {
      const double F = seq.energy_y.value();
      const double diff = std::abs(last.diagnostics.energy_y_h.to_double() - F);
      if (!(diff < tol.final_energy_relative * std::max(1.0, F))) {
        fail(last.h, "energy gap " + std::to_string(diff) + " too large");
      }
    }
  }
  return failures;
}

}  // namespace lavgap
