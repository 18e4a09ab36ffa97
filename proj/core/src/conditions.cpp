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

#include "lavgap/conditions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "lavgap/energy.hpp"
#include "lavgap/parallel.hpp"

namespace lavgap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Sampled values at or above this are treated as unbounded.
constexpr double kHuge = 1e300;

using Point = std::vector<double>;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool unbounded(double v) { return !(v < kHuge); }

std::vector<double> times(const Interval& I, std::size_t count) {
  count = std::max<std::size_t>(count, 2);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = i + 1 == count ? I.T() : I.t() + I.length() * static_cast<double>(i) / (count - 1);
  }
  return out;
}

// Points of the closed ball of radius R. In one dimension an odd-sized
// uniform grid (so 0 is included); otherwise the origin, points on the
// axes and seeded random points.
std::vector<Point> ball_points(std::size_t n, double R, std::size_t count, std::mt19937_64& rng) {
  std::vector<Point> out;
  if (n == 1) {
    const std::size_t m = std::max<std::size_t>(count | 1, 3);
    for (std::size_t i = 0; i < m; ++i) {
      out.push_back({-R + 2.0 * R * static_cast<double>(i) / static_cast<double>(m - 1)});
    }
    out[m / 2][0] = 0.0;
    return out;
  }
  out.push_back(Point(n, 0.0));
  const std::array<double, 4> fractions{0.25, 0.5, 0.75, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (double f : fractions) {
      for (double sign : {-1.0, 1.0}) {
        Point p(n, 0.0);
        p[i] = sign * f * R;
        out.push_back(std::move(p));
      }
    }
  }
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  while (out.size() < count) {
    Point p(n);
    for (double& x : p) x = gauss(rng);
    const double r = norm(p);
    if (r == 0.0) continue;
    const double scale = R * std::pow(unif(rng), 1.0 / static_cast<double>(n)) / r;
    for (double& x : p) x *= scale;
    out.push_back(std::move(p));
  }
  return out;
}

// The range of y on a fine time grid, widened by `delta` in each axis
// direction.
std::vector<Point> range_points(const Trajectory& y, std::size_t count, double delta) {
  const std::size_t n = y.dimension();
  std::vector<Point> out;
  for (double s : times(y.interval(), 4 * count)) {
    Point p = y.value(s);
    out.push_back(p);
    if (delta > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (double sign : {-1.0, 1.0}) {
          Point q = p;
          q[i] += sign * delta;
          out.push_back(std::move(q));
        }
      }
    }
  }
  return out;
}

std::vector<Point> region_points(const StateRegion& region, std::size_t n,
                                 const Sampling& sampling, std::mt19937_64& rng) {
  if (region.kind == StateRegion::Kind::ball) {
    if (!(region.K > 0.0)) throw std::invalid_argument("StateRegion: K must be positive");
    return ball_points(n, region.K, sampling.state_samples, rng);
  }
  if (!region.y) throw std::invalid_argument("StateRegion: trajectory missing");
  if (region.y->dimension() != n) throw std::invalid_argument("StateRegion: dimension mismatch");
  return range_points(*region.y, sampling.state_samples, sampling.neighbourhood);
}

bool along(const StateRegion& region) {
  return region.kind == StateRegion::Kind::along_trajectory;
}

double Lam(const ProductLagrangian& lag, double s, const Point& z, const Point& v) {
  return lag.Lambda(s, z, v).to_double();
}

double Psi(const ProductLagrangian& lag, double s, const Point& z) {
  return lag.Psi(s, z).to_double();
}

Witness make_witness(double s, Point y, Point u, double value, std::string detail) {
  Witness w;
  w.s = s;
  w.y = std::move(y);
  w.u = std::move(u);
  w.value = ExtendedValue::from_double(std::max(value, 0.0));
  w.detail = std::move(detail);
  return w;
}

std::map<std::string, double> sampling_record(const Sampling& sampling, std::size_t samples) {
  return {{"time_samples", static_cast<double>(sampling.time_samples)},
          {"state_samples", static_cast<double>(sampling.state_samples)},
          {"velocity_samples", static_cast<double>(sampling.velocity_samples)},
          {"refinements", static_cast<double>(sampling.refinements)},
          {"evaluations", static_cast<double>(samples)}};
}

// One (S) sample: rate D = |Lambda(s2) - Lambda(s1)| / |s2 - s1| at a
// domain point (s, z, v).
struct SRow {
  int level;
  double s, s1, s2;
  std::size_t z, v;
  double D, lam, vp;
};

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::S: return "S";
    case Condition::G_Lambda: return "G_Lambda";
    case Condition::B_Lambda: return "B_Lambda";
    case Condition::B_Psi: return "B_Psi";
    case Condition::C_Psi: return "C_Psi";
    case Condition::P_Psi: return "P_Psi";
    case Condition::U_yLambda: return "U_yLambda";
    case Condition::B_yLambda: return "B_yLambda";
    case Condition::B_yPsi: return "B_yPsi";
    case Condition::C_yPsi: return "C_yPsi";
    case Condition::P_yPsi: return "P_yPsi";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "Holds";
    case Verdict::fails_with_witness: return "FailsWithWitness";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

Condition condition_from_string(const std::string& s) {
  for (Condition c : {Condition::S, Condition::G_Lambda, Condition::B_Lambda, Condition::B_Psi,
                      Condition::C_Psi, Condition::P_Psi, Condition::U_yLambda,
                      Condition::B_yLambda, Condition::B_yPsi, Condition::C_yPsi,
                      Condition::P_yPsi}) {
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown condition: " + s);
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::holds, Verdict::fails_with_witness, Verdict::inconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict: " + s);
}

StateRegion StateRegion::ball(double K) {
  StateRegion r;
  r.kind = Kind::ball;
  r.K = K;
  return r;
}

StateRegion StateRegion::along(const Trajectory& y) {
  StateRegion r;
  r.kind = Kind::along_trajectory;
  r.y = y;
  return r;
}

ConditionReport check_S(const ProductLagrangian& lag, double K, double p,
                        const Sampling& sampling) {
  if (!(K > 0.0)) throw std::invalid_argument("check_S: K must be positive");
  const std::size_t n = lag.dimension;
  const Interval& I = lag.interval;
  const double eps = I.length() / 50.0;
  std::mt19937_64 rng(sampling.seed);
  const auto Z = ball_points(n, K, sampling.state_samples, rng);
  const auto V = ball_points(n, sampling.velocity_radius, sampling.velocity_samples, rng);
  const auto S = times(I, sampling.time_samples);
  const int levels = std::max(sampling.refinements, 0) + 1;

  ConditionReport rep;
  rep.condition = Condition::S;
  rep.constants["eps_star"] = eps;
  rep.constants["K"] = K;
  rep.constants["p"] = p;

  // rows[i] collects the samples of center S[i].
  std::vector<std::vector<SRow>> rows(S.size());
  std::vector<std::optional<Witness>> domain_breaks(S.size());
  parallel_for(S.size(), sampling.workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double s = S[i];
      for (int level = 0; level < levels; ++level) {
        const double delta = std::ldexp(eps, -level);
        const std::array<std::pair<double, double>, 2> pairs{
            std::pair{I.clamp(s - delta), I.clamp(s + delta)}, std::pair{s, I.clamp(s + delta)}};
        for (auto [s1, s2] : pairs) {
          if (!(s2 > s1)) continue;
          for (std::size_t a = 0; a < Z.size(); ++a) {
            for (std::size_t b = 0; b < V.size(); ++b) {
              const double lam = Lam(lag, s, Z[a], V[b]);
              if (unbounded(lam)) continue;
              const double l1 = Lam(lag, s1, Z[a], V[b]);
              const double l2 = Lam(lag, s2, Z[a], V[b]);
              if (unbounded(l1) || unbounded(l2)) {
                if (!domain_breaks[i]) {
                  Witness w = make_witness(s, Z[a], V[b], kInf,
                                           "Lambda infinite at a nearby time");
                  w.s1 = s1;
                  w.s2 = s2;
                  domain_breaks[i] = std::move(w);
                }
                continue;
              }
              const double D = std::abs(l2 - l1) / (s2 - s1);
              rows[i].push_back({level, s, s1, s2, a, b, D, lam, std::pow(norm(V[b]), p)});
            }
          }
        }
      }
    }
  });

  std::vector<SRow> all;
  for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  rep.sampling = sampling_record(sampling, all.size() * 3);
  for (auto& w : domain_breaks) {
    if (w) {
      rep.verdict = Verdict::fails_with_witness;
      rep.witness = std::move(*w);
      rep.constants["kappa"] = 0.0;
      rep.constants["beta"] = 0.0;
      rep.constants["gamma"] = 0.0;
      rep.detail = "the domain of Lambda depends on time";
      return rep;
    }
  }
  if (all.empty()) {
    rep.detail = "no samples inside the domain";
    return rep;
  }

  // Worst normalized rate per spacing level.
  std::vector<double> rate(levels, 0.0);
  std::vector<std::size_t> worst(levels, 0);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const SRow& r = all[k];
    const double q = r.D / (r.lam + r.vp + 1.0);
    if (q > rate[r.level] || (q == rate[r.level] && worst[r.level] == 0)) {
      rate[r.level] = q;
      worst[r.level] = k;
    }
  }
  for (int l = 0; l < levels; ++l) rep.profile.emplace_back(std::ldexp(eps, -l), rate[l]);

  // Fit (kappa, beta, gamma) minimizing kappa + 2 beta + 4 gamma on the rows
  // of the given levels.
  double scale = 1.0;
  for (const SRow& r : all) scale = std::max(scale, r.lam);
  const double tol = 1e-9 * scale;
  struct Fit {
    double kappa, beta, gamma, residual;
  };
  auto fit = [&](int max_level) {
    std::vector<double> grid{0.0};
    for (int e = -10; e <= 10; ++e) grid.push_back(std::ldexp(1.0, e));
    Fit best{0, 0, kInf, kInf};
    double best_cost = kInf;
    for (double kappa : grid) {
      for (double beta : grid) {
        double g = 0.0;
        for (const SRow& r : all) {
          if (r.level > max_level) continue;
          g = std::max(g, r.D - kappa * r.lam - beta * r.vp);
        }
        const double gamma = g <= tol ? 0.0 : g;
        const double cost = kappa + 2.0 * beta + 4.0 * gamma;
        if (cost < best_cost) {
          best_cost = cost;
          best = {kappa, beta, gamma, g};
        }
      }
    }
    return best;
  };

  // Unbounded growth of the worst rate as the spacing shrinks.
  bool growing = levels >= 4 && rate.back() > 4.0 * std::max(rate.front(), 1e-300);
  for (int l = std::max(levels - 3, 1); growing && l < levels; ++l) {
    if (!(rate[l] >= 1.2 * rate[l - 1])) growing = false;
  }
  if (growing) {
    const Fit f = fit(0);
    rep.constants["kappa"] = f.kappa;
    rep.constants["beta"] = f.beta;
    rep.constants["gamma"] = f.gamma;
    const SRow* hit = nullptr;
    for (const SRow& r : all) {
      if (r.level != levels - 1) continue;
      const double excess = r.D - (f.kappa * r.lam + f.beta * r.vp + f.gamma) - tol;
      if (excess > 0.0 && (!hit || r.D > hit->D)) hit = &r;
    }
    if (hit) {
      Witness w = make_witness(hit->s, Z[hit->z], V[hit->v], hit->D,
                               "time difference quotient grows as eps* is refined");
      w.s1 = hit->s1;
      w.s2 = hit->s2;
      rep.verdict = Verdict::fails_with_witness;
      rep.witness = std::move(w);
      rep.detail = "rate grows without bound under refinement";
      return rep;
    }
    rep.detail = "rate grows under refinement but no sample violates the fit";
    return rep;
  }

  const Fit f = fit(levels - 1);
  rep.constants["kappa"] = f.kappa;
  rep.constants["beta"] = f.beta;
  rep.constants["gamma"] = f.gamma;
  rep.constants["residual"] = std::max(f.residual, 0.0);
  rep.verdict = Verdict::holds;
  return rep;
}

ConditionReport check_growth(const ProductLagrangian& lag, const Sampling& sampling) {
  const std::size_t n = lag.dimension;
  std::mt19937_64 rng(sampling.seed);
  const auto Z = ball_points(n, 4.0, std::min<std::size_t>(sampling.state_samples, 9), rng);
  const auto S = times(lag.interval, std::min<std::size_t>(sampling.time_samples, 9));
  auto dirs = ball_points(n, 1.0, 2 * n + 2, rng);
  std::erase_if(dirs, [](const Point& d) { return norm(d) < 0.5; });
  for (auto& d : dirs) {
    const double r = norm(d);
    for (double& x : d) x /= r;
  }

  ConditionReport rep;
  rep.condition = Condition::G_Lambda;
  std::size_t evaluations = 0;

  // Shells |v| = 2^k: the smallest ratio Lambda / |v| on each.
  const int shells = 17;
  std::vector<double> ratio(shells, kInf);
  std::vector<Witness> argmin(shells);
  for (int k = 0; k < shells; ++k) {
    const double r = std::ldexp(1.0, k);
    for (double s : S) {
      for (const auto& z : Z) {
        for (const auto& d : dirs) {
          Point v = d;
          for (double& x : v) x *= r;
          const double lam = Lam(lag, s, z, v);
          ++evaluations;
          if (lam / r < ratio[k]) {
            ratio[k] = lam / r;
            argmin[k] = make_witness(s, z, v, lam, "");
          }
        }
      }
    }
    rep.profile.emplace_back(r, ratio[k]);
  }
  rep.sampling = sampling_record(sampling, evaluations);

  bool decaying = true;
  for (int k = shells - 4; k < shells; ++k) {
    if (!(ratio[k] * 1.2 <= ratio[k - 1])) decaying = false;
  }
  const double ratio_min = *std::min_element(ratio.begin(), ratio.end());
  if (ratio.back() <= 1e-9 || decaying) {
    rep.verdict = Verdict::fails_with_witness;
    rep.witness = argmin.back();
    rep.witness->detail = "Lambda / |v| vanishes along a ray";
    rep.constants["ratio_bound"] = ratio.back();
    rep.detail = decaying ? "sublinear growth" : "Lambda bounded along a ray";
    return rep;
  }
  const double alpha = std::min(1.0, ratio_min);
  double d = 0.0;
  auto V = ball_points(n, sampling.velocity_radius, sampling.velocity_samples, rng);
  // The deficit alpha|v| - Lambda peaks at moderate |v|: fine radial rays up to 2.
  for (const auto& dir : dirs) {
    for (int j = 1; j <= 256; ++j) {
      Point v = dir;
      for (double& x : v) x *= j / 128.0;
      V.push_back(std::move(v));
    }
  }
  for (double s : S) {
    for (const auto& z : Z) {
      for (const auto& v : V) {
        d = std::max(d, alpha * norm(v) - Lam(lag, s, z, v));
      }
    }
  }
  rep.verdict = Verdict::holds;
  rep.constants["alpha"] = alpha;
  rep.constants["d"] = d;
  return rep;
}

ConditionReport check_B_Lambda(const ProductLagrangian& lag, const StateRegion& region,
                               std::vector<double> nu_grid, const Sampling& sampling) {
  std::sort(nu_grid.begin(), nu_grid.end());
  nu_grid.erase(std::unique(nu_grid.begin(), nu_grid.end()), nu_grid.end());
  if (nu_grid.empty() || !(nu_grid.front() > 0.0)) {
    throw std::invalid_argument("check_B_Lambda: nu_grid must hold positive radii");
  }
  const std::size_t n = lag.dimension;
  std::mt19937_64 rng(sampling.seed);
  const auto Z = region_points(region, n, sampling, rng);
  const auto S = times(lag.interval, sampling.time_samples);
  const auto C = ball_points(n, 1.0, sampling.velocity_samples, rng);

  ConditionReport rep;
  rep.condition = along(region) ? Condition::B_yLambda : Condition::B_Lambda;
  if (!along(region)) rep.constants["K"] = region.K;

  // Velocities of level i are nu_j * c for j <= i, so the sampled sets are
  // nested and the sup is monotone in nu.
  double sup = 0.0;
  std::optional<Witness> first_infinite;
  std::size_t evaluations = 0;
  std::size_t bounded_levels = 0;
  for (std::size_t i = 0; i < nu_grid.size(); ++i) {
    const double nu = nu_grid[i];
    std::vector<double> sup_at(S.size(), 0.0);
    std::vector<std::optional<Witness>> inf_at(S.size());
    parallel_for(S.size(), sampling.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) {
        for (const auto& z : Z) {
          for (const auto& c : C) {
            Point v = c;
            for (double& x : v) x *= nu;
            const double lam = Lam(lag, S[k], z, v);
            if (unbounded(lam)) {
              if (!inf_at[k] || norm(v) < norm(inf_at[k]->u)) {
                inf_at[k] = make_witness(S[k], z, v, lam, "Lambda infinite at small velocity");
              }
            } else {
              sup_at[k] = std::max(sup_at[k], lam);
            }
          }
        }
      }
    });
    evaluations += S.size() * Z.size() * C.size();
    bool infinite = false;
    for (std::size_t k = 0; k < S.size(); ++k) {
      sup = std::max(sup, sup_at[k]);
      if (inf_at[k]) {
        infinite = true;
        if (!first_infinite || norm(inf_at[k]->u) < norm(first_infinite->u)) {
          first_infinite = inf_at[k];
        }
      }
    }
    if (infinite) {
      for (std::size_t j = i; j < nu_grid.size(); ++j) rep.profile.emplace_back(nu_grid[j], kInf);
      break;
    }
    rep.profile.emplace_back(nu, sup);
    bounded_levels = i + 1;
  }
  rep.sampling = sampling_record(sampling, evaluations);

  if (bounded_levels == 0) {
    rep.verdict = Verdict::fails_with_witness;
    rep.witness = first_infinite;
    rep.detail = "Lambda is infinite at the smallest sampled velocity radius";
    return rep;
  }
  rep.verdict = Verdict::holds;
  rep.constants["nu0"] = nu_grid[bounded_levels - 1];
  rep.constants["M"] = rep.profile[bounded_levels - 1].second;
  return rep;
}

ConditionReport check_Psi(const ProductLagrangian& lag, const StateRegion& region, PsiMode mode,
                          const Sampling& sampling) {
  const std::size_t n = lag.dimension;
  std::mt19937_64 rng(sampling.seed);
  auto Z = region_points(region, n, sampling, rng);
  const auto S = times(lag.interval, sampling.time_samples);
  const bool y_mode = along(region);

  ConditionReport rep;
  if (!y_mode) rep.constants["K"] = region.K;

  if (mode == PsiMode::boundedness || mode == PsiMode::positivity) {
    const bool bound = mode == PsiMode::boundedness;
    rep.condition = bound ? (y_mode ? Condition::B_yPsi : Condition::B_Psi)
                          : (y_mode ? Condition::P_yPsi : Condition::P_Psi);
    double extreme = bound ? 0.0 : kInf;
    std::optional<Witness> at;
    std::size_t evaluations = 0;
    auto visit = [&](double s, const Point& z) {
      const double v = Psi(lag, s, z);
      ++evaluations;
      if (bound ? v > extreme : v < extreme) {
        extreme = v;
        at = make_witness(s, z, Point(n, 0.0), v, "");
      }
    };
    for (double s : S) {
      for (const auto& z : Z) visit(s, z);
    }
    if (y_mode) {
      // The graph itself.
      for (double s : times(lag.interval, 4 * sampling.time_samples)) visit(s, region.y->value(s));
    }
    rep.sampling = sampling_record(sampling, evaluations);
    if (bound) {
      if (unbounded(extreme)) {
        rep.verdict = Verdict::fails_with_witness;
        rep.witness = at;
        rep.witness->detail = "Psi infinite";
      } else {
        rep.verdict = Verdict::holds;
        rep.constants["M"] = extreme;
      }
      return rep;
    }
    rep.constants["m"] = extreme;
    rep.constants["positivity_floor"] = sampling.positivity_floor;
    if (extreme > sampling.positivity_floor) {
      rep.verdict = Verdict::holds;
    } else {
      rep.verdict = Verdict::fails_with_witness;
      rep.witness = at;
      rep.witness->detail = "Psi below the positivity floor";
    }
    return rep;
  }

  // Continuity in s: on each coarse time cell, repeatedly keep the half
  // with the larger variation. A continuous Psi(., z) leaves a vanishing
  // variation; a jump keeps it.
  rep.condition = y_mode ? Condition::C_yPsi : Condition::C_Psi;
  const int depth = 40;
  double scale = 1.0;
  std::size_t evaluations = 0;
  for (double s : S) {
    for (const auto& z : Z) scale = std::max(scale, std::abs(Psi(lag, s, z)));
  }
  evaluations += S.size() * Z.size();
  const double jump_tol = 1e-6 * (unbounded(scale) ? 1.0 : scale);
  double modulus = 0.0;
  std::optional<Witness> worst;
  for (const auto& z : Z) {
    for (std::size_t i = 0; i + 1 < S.size(); ++i) {
      double a = S[i], b = S[i + 1];
      double fa = Psi(lag, a, z), fb = Psi(lag, b, z);
      evaluations += 2;
      for (int k = 0; k < depth; ++k) {
        const double m = 0.5 * (a + b);
        if (!(a < m && m < b)) break;
        const double fm = Psi(lag, m, z);
        ++evaluations;
        const double left = unbounded(fa) || unbounded(fm) ? kInf : std::abs(fm - fa);
        const double right = unbounded(fm) || unbounded(fb) ? kInf : std::abs(fb - fm);
        if (left >= right) {
          b = m;
          fb = fm;
        } else {
          a = m;
          fa = fm;
        }
      }
      const double var = unbounded(fa) || unbounded(fb) ? kInf : std::abs(fb - fa);
      if (var > modulus) {
        modulus = var;
        Witness w = make_witness(0.5 * (a + b), z, Point(n, 0.0), var,
                                 "Psi(., z) jumps across a vanishing time interval");
        w.s1 = a;
        w.s2 = b;
        worst = std::move(w);
      }
    }
  }
  rep.sampling = sampling_record(sampling, evaluations);
  rep.constants["modulus"] = modulus;
  rep.constants["jump_tolerance"] = jump_tol;
  rep.constants["probe_spacing"] = std::ldexp(lag.interval.length() / (S.size() - 1), -depth);
  if (modulus > jump_tol) {
    rep.verdict = Verdict::fails_with_witness;
    rep.witness = worst;
  } else {
    rep.verdict = Verdict::holds;
  }
  return rep;
}

std::vector<Component> default_windows(const Trajectory& y) {
  if (y.dimension() != 1) return {};
  double lo = kInf, hi = -kInf;
  for (double s : times(y.interval(), 1025)) {
    const double v = y.value1(s);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double w = hi - lo;
  if (!(w > 1e-12 * std::max(1.0, std::abs(hi)))) return {};
  std::vector<Component> out{{lo + 0.25 * w, lo + 0.75 * w}};
  for (int k = 0; k < 4; ++k) out.push_back({lo + 0.25 * k * w, lo + 0.25 * (k + 1) * w});
  return out;
}

ConditionReport check_U(const ProductLagrangian& lag, const Trajectory& y,
                        std::vector<double> r_list, std::vector<Component> candidate_windows,
                        const Sampling& sampling) {
  ConditionReport rep;
  rep.condition = Condition::U_yLambda;
  if (y.dimension() != 1 || lag.dimension != 1) {
    rep.detail = "window scan needs a scalar trajectory";
    return rep;
  }
  const auto defaults = default_windows(y);
  if (defaults.empty()) {
    rep.detail = "the range of y has empty interior";
    return rep;
  }
  const double lo = defaults[1].a, hi = defaults.back().b;
  if (candidate_windows.empty()) candidate_windows = defaults;
  std::sort(r_list.begin(), r_list.end());
  if (r_list.empty() || !(r_list.front() > 0.0)) {
    throw std::invalid_argument("check_U: r_list must hold positive radii");
  }
  const auto S = times(lag.interval, sampling.time_samples);
  std::mt19937_64 rng(sampling.seed);
  const auto C = ball_points(1, 1.0, sampling.velocity_samples, rng);
  std::size_t evaluations = 0;

  for (const Component& window : candidate_windows) {
    const double a = std::max(window.a, lo), b = std::min(window.b, hi);
    if (!(a < b)) continue;
    const std::size_t m = std::max<std::size_t>(sampling.state_samples, 2);
    std::optional<Witness> fail;
    std::vector<std::pair<double, double>> profile;
    for (double r : r_list) {
      double sup = 0.0;
      for (double s : S) {
        for (std::size_t k = 0; k < m && !fail; ++k) {
          const Point z{a + (b - a) * (static_cast<double>(k) + 0.5) / static_cast<double>(m)};
          for (const auto& c : C) {
            const Point v{c[0] * r};
            const double lam = Lam(lag, s, z, v);
            ++evaluations;
            if (unbounded(lam)) {
              fail = make_witness(s, z, v, lam,
                                  "Lambda infinite in window ]" + std::to_string(a) + ", " +
                                      std::to_string(b) + "[ at r=" + std::to_string(r));
              break;
            }
            sup = std::max(sup, lam);
          }
        }
        if (fail) break;
      }
      if (fail) break;
      profile.emplace_back(r, sup);
    }
    if (fail) {
      rep.window_witnesses.push_back(std::move(*fail));
    } else if (!rep.window) {
      rep.window = Component{a, b};
      rep.profile = std::move(profile);
    }
  }
  rep.sampling = sampling_record(sampling, evaluations);
  if (rep.window) {
    rep.verdict = Verdict::holds;
    rep.constants["window_lo"] = rep.window->a;
    rep.constants["window_hi"] = rep.window->b;
  } else if (!rep.window_witnesses.empty()) {
    rep.verdict = Verdict::fails_with_witness;
    rep.witness = rep.window_witnesses.front();
  } else {
    rep.detail = "no candidate window meets the range of y";
  }
  return rep;
}

bool witness_reproduces(const ProductLagrangian& lag, const ConditionReport& report) {
  if (report.verdict != Verdict::fails_with_witness || !report.witness) return false;
  const Witness& w = *report.witness;
  auto constant = [&](const char* key) {
    auto it = report.constants.find(key);
    return it == report.constants.end() ? 0.0 : it->second;
  };
  switch (report.condition) {
    case Condition::S: {
      if (!w.s1 || !w.s2) return false;
      const double l1 = Lam(lag, *w.s1, w.y, w.u);
      const double l2 = Lam(lag, *w.s2, w.y, w.u);
      if (unbounded(l1) || unbounded(l2)) return !unbounded(Lam(lag, w.s, w.y, w.u));
      const double D = std::abs(l2 - l1) / (*w.s2 - *w.s1);
      const double rhs = constant("kappa") * Lam(lag, w.s, w.y, w.u) +
                         constant("beta") * std::pow(norm(w.u), constant("p")) +
                         constant("gamma");
      return D > rhs;
    }
    case Condition::G_Lambda:
      return Lam(lag, w.s, w.y, w.u) <= constant("ratio_bound") * norm(w.u);
    case Condition::B_Lambda:
    case Condition::B_yLambda:
    case Condition::U_yLambda:
      return unbounded(Lam(lag, w.s, w.y, w.u));
    case Condition::B_Psi:
    case Condition::B_yPsi:
      return unbounded(Psi(lag, w.s, w.y));
    case Condition::C_Psi:
    case Condition::C_yPsi: {
      if (!w.s1 || !w.s2) return false;
      const double a = Psi(lag, *w.s1, w.y), b = Psi(lag, *w.s2, w.y);
      return unbounded(a) || unbounded(b) || std::abs(b - a) > constant("jump_tolerance");
    }
    case Condition::P_Psi:
    case Condition::P_yPsi:
      return Psi(lag, w.s, w.y) <= constant("positivity_floor");
  }
  return false;
}

double l1_derivative_bound(double F_y, double m, double alpha, double d, const Interval& I) {
  if (!(m > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("l1_derivative_bound: m and alpha must be positive");
  }
  if (!std::isfinite(F_y) || !std::isfinite(d)) {
    throw std::invalid_argument("l1_derivative_bound: F_y and d must be finite");
  }
  return (F_y + m * d * I.length()) / (m * alpha);
}

double k_zero(const std::vector<double>& X, double inf_PX, double m, double alpha, double d,
              const Interval& I) {
  return norm(X) + l1_derivative_bound(inf_PX, m, alpha, d, I);
}

std::vector<ConditionReport> run_all_checks(const ProductLagrangian& lag, const Trajectory& y,
                                            const Sampling& sampling) {
  double sup = 0.0;
  for (double s : times(y.interval(), 1025)) sup = std::max(sup, norm(y.value(s)));
  const double K = sup + 1.0;
  const StateRegion ball = StateRegion::ball(K);
  const StateRegion graph = StateRegion::along(y);
  std::vector<ConditionReport> out;
  out.push_back(check_S(lag, K, lag.p, sampling));
  out.push_back(check_growth(lag, sampling));
  out.push_back(check_B_Lambda(lag, ball, {0.05, 0.1, 0.2, 0.4, 0.8, 1.0}, sampling));
  out.push_back(check_Psi(lag, ball, PsiMode::boundedness, sampling));
  out.push_back(check_Psi(lag, ball, PsiMode::continuity_in_s, sampling));
  out.push_back(check_Psi(lag, ball, PsiMode::positivity, sampling));
  out.push_back(check_U(lag, y, {1.0, 4.0, 16.0, 64.0, 1024.0}, {}, sampling));
  out.push_back(check_B_Lambda(lag, graph, {0.05, 0.1, 0.2, 0.4, 0.8, 1.0}, sampling));
  out.push_back(check_Psi(lag, graph, PsiMode::boundedness, sampling));
  out.push_back(check_Psi(lag, graph, PsiMode::continuity_in_s, sampling));
  out.push_back(check_Psi(lag, graph, PsiMode::positivity, sampling));
  return out;
}

GateResult theorem_gate(const ProductLagrangian& lag, const Trajectory& y,
                        const BoundaryData& boundary, const std::vector<ConditionReport>& reports,
                        const QuadratureSpec& quad) {
  auto holds = [&](Condition c) {
    for (const auto& r : reports) {
      if (r.condition == c) return r.verdict == Verdict::holds;
    }
    return false;
  };
  GateResult g;
  g.variant = variant_for(boundary);
  g.energy = energy(lag, y, quad);
  g.lambda_energy = energy_lambda_only(lag, y, quad);

  std::vector<std::string> missing1;
  for (Condition c : {Condition::S, Condition::B_yPsi, Condition::C_yPsi, Condition::B_yLambda}) {
    if (!holds(c)) missing1.push_back(to_string(c));
  }
  if (g.energy.is_infinite()) missing1.push_back("L_integrable");
  // Psi bounded below along y makes Lambda integrable whenever L is.
  const bool lambda_ok =
      g.lambda_energy.is_finite() || (holds(Condition::P_yPsi) && g.energy.is_finite());
  if (!lambda_ok) missing1.push_back("Lambda_integrable");
  std::vector<std::string> missing2 = missing1;
  if (!holds(Condition::U_yLambda)) missing2.push_back(to_string(Condition::U_yLambda));

  g.claim1 = missing1.empty();
  g.claim2 = missing2.empty();
  if (g.variant == Variant::both) {
    g.applicable = g.claim2;
    g.missing = std::move(missing2);
  } else {
    g.applicable = g.claim1;
    g.missing = std::move(missing1);
  }
  return g;
}

StageParams suggest_stage_params(const ProductLagrangian& lag, const Trajectory& y,
                                 const BoundaryData& boundary, const Sampling& sampling) {
  StageParams params;
  const ConditionReport b =
      check_B_Lambda(lag, StateRegion::along(y), {0.05, 0.1, 0.2, 0.4, 0.8, 1.0}, sampling);
  if (b.verdict != Verdict::holds) {
    throw std::invalid_argument("suggest_stage_params: Lambda is unbounded near y at small velocity");
  }
  params.nu0 = b.constants.at("nu0");
  if (variant_for(boundary) == Variant::both) {
    const ConditionReport u = check_U(lag, y, {1.0, 4.0, 16.0, 64.0, 1024.0}, {}, sampling);
    if (u.verdict != Verdict::holds) {
      throw std::invalid_argument("suggest_stage_params: no range window bounds Lambda");
    }
    params.U = u.window;
  }
  return params;
}

}  // namespace lavgap
