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

#include "lavgap/lagrangian.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lavgap {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Finite magnitudes that overflow double are still finite values of Lambda.
ExtendedValue saturating(double v) { return ExtendedValue::finite(std::min(v, DBL_MAX)); }

double param(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t dim_param(const Params& params) {
  const double n = param(params, "n", 1.0);
  if (!(n >= 1.0) || n != std::floor(n) || n > 64.0) {
    throw std::invalid_argument("builtin: n must be an integer in [1, 64]");
  }
  return static_cast<std::size_t>(n);
}

PsiFn unit_psi_fn() {
  return [](double, std::span<const double>) { return ExtendedValue::finite(1.0); };
}

void require_known(const Params& params, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : params) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw std::invalid_argument("builtin: unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw std::invalid_argument("builtin: parameter '" + k + "' not finite");
  }
}

ProductLagrangian base(const std::string& name, const Params& params, double t0, double T0) {
  ProductLagrangian lag;
  lag.name = name;
  lag.interval = Interval(param(params, "t", t0), param(params, "T", T0));
  return lag;
}

}  // namespace

double alberti_q(double z) {
  if (z >= 1.0) return std::numeric_limits<double>::infinity();
  return 0.5 / (1.0 - z);
}

ExtendedValue eval_L(const ProductLagrangian& lag, double s, std::span<const double> y,
                     std::span<const double> u) {
  if (!lag.interval.contains(s)) {
    throw std::out_of_range("eval_L: s=" + std::to_string(s) + " outside the interval");
  }
  if (y.size() != lag.dimension || u.size() != lag.dimension) {
    throw std::invalid_argument("eval_L: dimension mismatch");
  }
  return lag.Lambda(s, y, u) * lag.Psi(s, y);
}

ExtendedValue eval_L(const ProductLagrangian& lag, double s, double y, double u) {
  return eval_L(lag, s, std::span<const double>(&y, 1), std::span<const double>(&u, 1));
}

ExtendedValue eval_Lambda(const ProductLagrangian& lag, double s, double y, double u) {
  return lag.Lambda(s, std::span<const double>(&y, 1), std::span<const double>(&u, 1));
}

ExtendedValue eval_Psi(const ProductLagrangian& lag, double s, double y) {
  return lag.Psi(s, std::span<const double>(&y, 1));
}

ProductLagrangian builtin(const std::string& name, const Params& params) {
  if (name == "mania") {
    require_known(params, {"t", "T"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.p = 1.0;
    lag.Lambda = [](double, std::span<const double>, std::span<const double> u) {
      const double u2 = u[0] * u[0];
      return saturating(u2 * u2 * u2);
    };
    // y^3 - s = (y - c)(y^2 + y c + c^2) with c = cbrt(s): exactly zero on
    // the graph y = cbrt(s).
    lag.Psi = [](double s, std::span<const double> y) {
      const double c = std::cbrt(s);
      const double d = (y[0] - c) * (y[0] * y[0] + y[0] * c + c * c);
      return saturating(d * d);
    };
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "alberti_two_endpoint" || name == "alberti_one_endpoint") {
    require_known(params, {"t", "T", "slack"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.p = 1.0;
    lag.unit_psi = true;
    lag.Psi = unit_psi_fn();
    const double slack = param(params, "slack", 1e-7);
    if (!(slack >= 0.0 && slack < 0.5)) throw std::invalid_argument("builtin: slack in [0, 0.5[");
    if (name == "alberti_two_endpoint") {
      lag.Lambda = [slack](double, std::span<const double> z, std::span<const double> v) {
        if (z[0] < 0.0 || z[0] >= 1.0) return ExtendedValue::zero();
        return v[0] <= alberti_q(z[0]) * (1.0 + slack) ? ExtendedValue::zero()
                                                        : ExtendedValue::infinity();
      };
      lag.domain_hint = "0 iff z outside [0,1[ or v <= 1/(2(1-z)); +inf otherwise";
    } else {
      lag.Lambda = [slack](double, std::span<const double> z, std::span<const double> v) {
        if (z[0] < 0.0 || z[0] > 1.0) return ExtendedValue::infinity();
        return v[0] >= alberti_q(z[0]) * (1.0 - slack) ? ExtendedValue::zero()
                                                        : ExtendedValue::infinity();
      };
      lag.domain_hint = "0 iff z in [0,1] and v >= 1/(2(1-z)); +inf otherwise";
    }
    return lag;
  }
  if (name == "power") {
    require_known(params, {"t", "T", "p", "n"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.dimension = dim_param(params);
    lag.p = param(params, "p", 2.0);
    if (!(lag.p >= 1.0)) throw std::invalid_argument("builtin: power needs p >= 1");
    const double p = lag.p;
    lag.Lambda = [p](double, std::span<const double>, std::span<const double> u) {
      const double r2 = norm2(u);
      return saturating(p == 2.0 ? r2 : std::pow(r2, 0.5 * p));
    };
    lag.Psi = unit_psi_fn();
    lag.unit_psi = true;
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "arclength") {
    require_known(params, {"t", "T", "n"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.dimension = dim_param(params);
    lag.p = 1.0;
    lag.Lambda = [](double, std::span<const double>, std::span<const double> u) {
      return saturating(std::sqrt(1.0 + norm2(u)));
    };
    lag.Psi = unit_psi_fn();
    lag.unit_psi = true;
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "sqrt_lambda") {
    require_known(params, {"T"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    if (lag.interval.t() < 0.0) throw std::invalid_argument("builtin: sqrt_lambda needs t >= 0");
    lag.p = 2.0;
    lag.Lambda = [](double s, std::span<const double>, std::span<const double> u) {
      return saturating(u[0] * u[0] * std::sqrt(s));
    };
    lag.Psi = unit_psi_fn();
    lag.unit_psi = true;
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "sqrt_psi") {
    require_known(params, {"T"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.p = 2.0;
    lag.Lambda = [](double, std::span<const double>, std::span<const double> u) {
      return saturating(u[0] * u[0]);
    };
    lag.Psi = [](double s, std::span<const double>) { return saturating(std::sqrt(s)); };
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "weighted_quadratic") {
    require_known(params, {"t", "T"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.p = 2.0;
    lag.Lambda = [](double s, std::span<const double>, std::span<const double> u) {
      return saturating((1.0 + s) * u[0] * u[0]);
    };
    lag.Psi = unit_psi_fn();
    lag.unit_psi = true;
    lag.domain_hint = "Lambda real valued";
    return lag;
  }
  if (name == "zero") {
    require_known(params, {"t", "T", "n"});
    ProductLagrangian lag = base(name, params, 0.0, 1.0);
    lag.dimension = dim_param(params);
    lag.p = 1.0;
    lag.Lambda = [](double, std::span<const double>, std::span<const double>) {
      return ExtendedValue::zero();
    };
    lag.Psi = unit_psi_fn();
    lag.unit_psi = true;
    lag.domain_hint = "Lambda identically zero";
    return lag;
  }
  throw std::invalid_argument("unknown lagrangian '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"mania",      "alberti_two_endpoint", "alberti_one_endpoint", "power",
          "arclength",  "sqrt_lambda",          "sqrt_psi",             "weighted_quadratic",
          "zero"};
}

bool in_domain(const ProductLagrangian& lag, std::span<const double> y,
               std::span<const double> u) {
  return lag.Lambda(lag.interval.t(), y, u).is_finite();
}

bool in_domain(const ProductLagrangian& lag, double y, double u) {
  return in_domain(lag, std::span<const double>(&y, 1), std::span<const double>(&u, 1));
}

LagrangianValidation validate_lagrangian(const ProductLagrangian& lag, std::uint64_t seed,
                                         std::size_t states, std::size_t time_pairs,
                                         double radius) {
  LagrangianValidation out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-radius, radius);
  std::uniform_real_distribution<double> time(lag.interval.t(), lag.interval.T());
  const std::size_t n = lag.dimension;
  std::vector<double> y(n), u(n);
  for (std::size_t i = 0; i < states; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      y[j] = box(rng);
      u[j] = box(rng);
    }
    for (std::size_t k = 0; k < time_pairs; ++k) {
      const double s1 = time(rng);
      const double s2 = time(rng);
      ExtendedValue l1, l2, psi;
      try {
        l1 = lag.Lambda(s1, y, u);
        l2 = lag.Lambda(s2, y, u);
        psi = lag.Psi(s1, y);
      } catch (const std::domain_error& e) {
        out.nonnegative = false;
        out.detail = e.what();
        return out;
      }
      ++out.samples;
      if (l1.is_finite() != l2.is_finite() && out.product_domain) {
        out.product_domain = false;
        std::ostringstream os;
        os << "finiteness of Lambda differs between s=" << s1 << " and s=" << s2;
        out.detail = os.str();
      }
    }
  }
  return out;
}

BoundaryData BoundaryData::initial(std::vector<double> X) {
  return {Kind::initial_only, std::move(X), {}};
}

BoundaryData BoundaryData::final_only(std::vector<double> Y) {
  return {Kind::final_only, {}, std::move(Y)};
}

BoundaryData BoundaryData::both(std::vector<double> X, std::vector<double> Y) {
  return {Kind::both, std::move(X), std::move(Y)};
}

void BoundaryData::validate(std::size_t n) const {
  if (pins_left() && X.size() != n) throw std::invalid_argument("BoundaryData: X has wrong size");
  if (pins_right() && Y.size() != n) throw std::invalid_argument("BoundaryData: Y has wrong size");
}

std::string to_string(BoundaryData::Kind kind) {
  switch (kind) {
    case BoundaryData::Kind::initial_only:
      return "initial";
    case BoundaryData::Kind::final_only:
      return "final";
    case BoundaryData::Kind::both:
      return "both";
  }
  return "both";
}

BoundaryData::Kind boundary_kind_from_string(const std::string& s) {
  if (s == "initial" || s == "initial_only" || s == "InitialOnly") {
    return BoundaryData::Kind::initial_only;
  }
  if (s == "final" || s == "final_only" || s == "FinalOnly") return BoundaryData::Kind::final_only;
  if (s == "both" || s == "Both") return BoundaryData::Kind::both;
  throw std::invalid_argument("unknown boundary kind '" + s + "'");
}

}  // namespace lavgap
