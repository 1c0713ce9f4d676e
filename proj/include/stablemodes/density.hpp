// Copyright 2026 The stablemodes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABLEMODES_DENSITY_HPP_
#define STABLEMODES_DENSITY_HPP_

// Density f_α of the positive α-stable law with E[exp(-λZ)] = exp(-λ^α),
// its derivative, distribution function, power transforms and moments.
//
// Two evaluators:
//
//  * Kanter integral (x < x*). With k = α/(1-α), a(u) = b_α(u)^{-1/(1-α)}
//    and g(u) = a(u) x^{-k},
//        f(x)  = k/(πx) ∫_0^π g e^{-g} du,
//        f'(x) = -k/(πx²) ∫_0^π g e^{-g} (1 + k - k g) du,
//        F(x)  = 1/π ∫_0^π e^{-g} du.
//    g is increasing in u, so the integrand is concentrated near the
//    point where g is O(1); its location is found by root solving.
//
//  * Large-x series (x ≥ x* = 4^{1/α}),
//        f(x) = Σ_{n≥1} (-1)^{n-1} Γ(1+αn) sin(παn) / (π n!) x^{-αn-1},
//    differentiated or integrated term by term.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "stablemodes/errors.hpp"
#include "stablemodes/kanter.hpp"
#include "stablemodes/quadrature.hpp"
#include "stablemodes/specfun.hpp"
#include "stablemodes/types.hpp"

namespace stablemodes {

// Start of the series regime.
inline double series_switch_point(double alpha) {
  return std::pow(4.0, 1.0 / alpha);
}

// Value and shape of f_α at one point, in a form that survives underflow.
struct DensityPoint {
  double x = 0.0;
  double log_f = 0.0;
  // φ(x) = -1 - x f'(x) / f(x)
  double profile = 0.0;
  double rel_error = 0.0;
  double profile_error = 0.0;
  Regime regime = Regime::kIntegral;

  double f() const { return std::exp(log_f); }
  double f_prime() const { return -f() * (1.0 + profile) / x; }
};

namespace density_detail {

// log b_α(0) - log b_α(u), increasing from 0 to +∞ on [0, π).
inline double log_b_drop(double alpha, double u) {
  using kanter_detail::log_sinc;
  const double beta = 1.0 - alpha;
  return -(log_sinc(u) - alpha * log_sinc(alpha * u) -
           beta * log_sinc(beta * u));
}

// u in [0, π] with log_b_drop(u) / (1-α) = target.
inline double solve_drop(double alpha, double target) {
  if (target <= 0.0) return 0.0;
  const double beta = 1.0 - alpha;
  auto fn = [&](double u) { return log_b_drop(alpha, u) / beta - target; };
  const double hi = std::nextafter(kPi, 0.0);
  if (fn(hi) <= 0.0) return kPi;
  // Near 0 the scaled drop is α u²/2.
  double lo_u = 0.0;
  double hi_u = hi;
  const double guess = std::sqrt(2.0 * target / alpha);
  if (guess < 1e-3) {
    lo_u = 0.5 * guess;
    hi_u = 2.0 * guess;
    if (fn(lo_u) > 0.0) lo_u = 0.0;
    if (fn(hi_u) < 0.0) hi_u = hi;
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      fn, lo_u, hi_u, boost::math::tools::eps_tolerance<double>(40), iters);
  return 0.5 * (r.first + r.second);
}

// Integrates kernel(ratio, excess, g) over u in (0, π), where
// g = shift·exp(d(u)), excess = g - shift, ratio = g / max(shift, 1).
// The range is cut where excess exceeds 745.
template <std::size_t N, class Kernel>
quadrature::Result<N> kanter_integral(double alpha, double x, Kernel kernel,
                                      double& shift_out, double rel_tol) {
  const double beta = 1.0 - alpha;
  const double k = alpha / beta;
  const double log_a0 = -log_b_alpha(alpha, 0.0) / beta;
  const double log_shift = log_a0 - k * std::log(x);
  const double shift = std::exp(log_shift);
  const double scale = std::max(shift, 1.0);
  shift_out = shift;

  std::vector<double> breaks = {0.0};
  auto add_drop = [&](double d) {
    if (d > 0.0 && std::isfinite(d)) breaks.push_back(solve_drop(alpha, d));
  };
  for (double g : {0.1, 0.5, 1.0, 2.0, 5.0}) add_drop(std::log(g) - log_shift);
  for (double excess : {0.5, 2.0, 10.0, 50.0, 200.0}) {
    add_drop(std::log1p(excess / shift));
  }
  const double u_end = solve_drop(alpha, std::log1p(745.0 / shift));
  breaks.push_back(u_end);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  while (breaks.size() > 1 && breaks.back() > u_end) breaks.pop_back();

  const double shift_over_scale = shift / scale;
  auto integrand = [&](double u) {
    const double d = log_b_drop(alpha, u) / beta;
    const double excess = shift * std::expm1(d);
    const double ratio = shift_over_scale * std::exp(d);
    return kernel(ratio, excess, shift * std::exp(d));
  };
  quadrature::Options opts;
  opts.rel_tol = rel_tol;
  return quadrature::integrate<N>(integrand, std::span<const double>(breaks),
                                  opts);
}

inline constexpr double kKanterRelTol = 1e-12;

inline DensityPoint kanter_point(double alpha, double x) {
  const double beta = 1.0 - alpha;
  const double k = alpha / beta;
  double shift = 0.0;
  auto kernel = [](double ratio, double excess, double) {
    const double e = std::exp(-excess);
    return std::array<double, 3>{e, ratio * e, ratio * ratio * e};
  };
  const auto res = kanter_integral<3>(alpha, x, kernel, shift, kKanterRelTol);
  const double scale = std::max(shift, 1.0);
  const double j1 = res.value[1];
  const double j2 = res.value[2];
  DensityPoint p;
  p.x = x;
  p.regime = Regime::kIntegral;
  if (!(j1 > 0.0)) {
    throw AccuracyError("Kanter integral vanished", 0.0, res.abs_error[1]);
  }
  p.log_f = std::log(k / (kPi * x)) - shift + std::log(scale) + std::log(j1);
  const double ratio = scale * j2 / j1;
  p.profile = k * (1.0 - ratio);
  const double rel1 = res.abs_error[1] / j1;
  const double rel2 = res.abs_error[2] / std::max(j2, 1e-300);
  p.rel_error = rel1 + 4.0 * std::numeric_limits<double>::epsilon() *
                           (1.0 + std::abs(shift));
  p.profile_error = k * ratio * (rel1 + rel2) +
                    8.0 * std::numeric_limits<double>::epsilon() *
                        std::abs(p.profile);
  return p;
}

struct SeriesSums {
  double f = 0.0;
  double f_prime = 0.0;
  double sf = 0.0;  // ∫_x^∞ f
  double err_f = 0.0;
  double err_f_prime = 0.0;
  double err_sf = 0.0;
};

inline SeriesSums series_sums(double alpha, double x) {
  SeriesSums s;
  const double log_x = std::log(x);
  double abs_f = 0.0;
  double abs_fp = 0.0;
  double abs_sf = 0.0;
  constexpr int kMaxTerms = 400;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double an = alpha * n;
    const double log_env =
        std::lgamma(1.0 + an) - std::lgamma(n + 1.0) - an * log_x - std::log(kPi);
    const double env = std::exp(log_env);  // term bound without sin(παn)
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double sn = std::sin(kPi * an);
    const double tf = sign * sn * env / x;
    s.f += tf;
    s.f_prime += -(an + 1.0) * tf / x;
    s.sf += sign * sn * env / an;
    abs_f += std::abs(tf);
    abs_fp += std::abs((an + 1.0) * tf / x);
    abs_sf += std::abs(env / an);
    if (env < 1e-18 * std::abs(s.f) * x && n > 2) {
      s.err_f = env / x;
      s.err_f_prime = (an + 1.0) * env / (x * x);
      s.err_sf = env / an;
      break;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  s.err_f += 4.0 * eps * abs_f;
  s.err_f_prime += 4.0 * eps * abs_fp;
  s.err_sf += 4.0 * eps * abs_sf;
  return s;
}

inline DensityPoint series_point(double alpha, double x) {
  const SeriesSums s = series_sums(alpha, x);
  if (!(s.f > 0.0)) {
    throw AccuracyError("large-x series is not positive", s.f, s.err_f);
  }
  DensityPoint p;
  p.x = x;
  p.regime = Regime::kSeries;
  p.log_f = std::log(s.f);
  p.profile = -1.0 - x * s.f_prime / s.f;
  p.rel_error = s.err_f / s.f;
  p.profile_error = x * (s.err_f_prime + std::abs(s.f_prime) * p.rel_error) / s.f;
  return p;
}

inline void require_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("density argument must be positive and finite");
  }
}

}  // namespace density_detail

// Kanter-integral evaluator, valid for every x > 0.
inline DensityPoint evaluate_density_integral(StabilityIndex alpha, double x) {
  density_detail::require_positive(x);
  return density_detail::kanter_point(alpha.value(), x);
}

// Series evaluator; accurate for x^α ≳ 2.
inline DensityPoint evaluate_density_series(StabilityIndex alpha, double x) {
  density_detail::require_positive(x);
  return density_detail::series_point(alpha.value(), x);
}

inline DensityPoint evaluate_density(StabilityIndex alpha, double x) {
  density_detail::require_positive(x);
  if (x >= series_switch_point(alpha.value())) {
    return density_detail::series_point(alpha.value(), x);
  }
  return density_detail::kanter_point(alpha.value(), x);
}

inline EvalResult stable_density(StabilityIndex alpha, double x) {
  const DensityPoint p = evaluate_density(alpha, x);
  const bool underflow = p.log_f < std::log(std::numeric_limits<double>::min());
  const double v = underflow ? 0.0 : p.f();
  return {v, v * p.rel_error, p.regime, underflow};
}

inline EvalResult stable_density_prime(StabilityIndex alpha, double x) {
  const DensityPoint p = evaluate_density(alpha, x);
  const bool underflow = p.log_f < std::log(std::numeric_limits<double>::min());
  const double f = underflow ? 0.0 : p.f();
  const double v = underflow ? 0.0 : p.f_prime();
  const double err = std::abs(v) * p.rel_error + f * p.profile_error / x;
  return {v, err, p.regime, underflow};
}

inline double log_stable_density(StabilityIndex alpha, double x) {
  return evaluate_density(alpha, x).log_f;
}

// φ(x) = -1 - x f'(x)/f(x). The frontier R(α) is its supremum.
inline double frontier_profile(StabilityIndex alpha, double x) {
  return evaluate_density(alpha, x).profile;
}

struct CdfValue {
  double cdf = 0.0;
  double sf = 0.0;
  double abs_error = 0.0;
};

inline CdfValue stable_cdf(StabilityIndex index, double x) {
  density_detail::require_positive(x);
  const double alpha = index.value();
  CdfValue out;
  if (x >= series_switch_point(alpha)) {
    const auto s = density_detail::series_sums(alpha, x);
    out.sf = s.sf;
    out.cdf = 1.0 - s.sf;
    out.abs_error = s.err_sf;
    return out;
  }
  double shift = 0.0;
  auto kernel = [](double, double excess, double g) {
    return std::array<double, 2>{std::exp(-excess), -std::expm1(-g)};
  };
  const auto res = density_detail::kanter_integral<2>(
      alpha, x, kernel, shift, density_detail::kKanterRelTol);
  out.cdf = std::exp(-shift) * res.value[0] / kPi;
  // The survival integrand is not truncated by the excess cut: add the
  // remainder of (0, π) where 1 - e^{-g} = 1 to within 1e-300.
  double u_end = 0.0;
  {
    const double beta = 1.0 - alpha;
    const double log_shift =
        -log_b_alpha(alpha, 0.0) / beta - alpha / beta * std::log(x);
    u_end = density_detail::solve_drop(
        alpha, std::log1p(745.0 / std::exp(log_shift)));
  }
  out.sf = (res.value[1] + (kPi - u_end)) / kPi;
  out.abs_error = (res.abs_error[0] * std::exp(-shift) + res.abs_error[1]) / kPi;
  return out;
}

// Law with density g_α^r (r > 0): G(x) = F(x) + x f(x) / r. Above x* the
// survival function is summed directly,
//   1 - G(x) = Σ (-1)^{n-1} Γ(αn)(1 - αn/r) sin(παn) / (π n!) x^{-αn},
// which avoids the cancellation of its two leading terms when r = α.
inline CdfValue g_law_cdf(StabilityIndex index, double r, double x) {
  density_detail::require_positive(x);
  if (!(r > 0.0)) throw DomainError("g_alpha^r requires r > 0");
  const double alpha = index.value();
  CdfValue out;
  if (x >= series_switch_point(alpha)) {
    const double log_x = std::log(x);
    double sum = 0.0;
    double abs_sum = 0.0;
    double last = 0.0;
    for (int n = 1; n <= 400; ++n) {
      const double an = alpha * n;
      const double env =
          std::exp(std::lgamma(an) - std::lgamma(n + 1.0) - an * log_x) / kPi;
      const double term = ((n % 2 == 1) ? 1.0 : -1.0) * std::sin(kPi * an) *
                          (1.0 - an / r) * env;
      sum += term;
      abs_sum += std::abs(term);
      last = env * std::abs(1.0 - an / r);
      if (env < 1e-18 * std::abs(sum) && n > 2) break;
    }
    out.sf = sum;
    out.cdf = 1.0 - sum;
    out.abs_error = last + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    return out;
  }
  const CdfValue c = stable_cdf(index, x);
  const DensityPoint p = evaluate_density(index, x);
  const double xf = x * p.f() / r;
  out.cdf = c.cdf + xf;
  out.sf = c.sf - xf;
  out.abs_error = c.abs_error + xf * p.rel_error;
  return out;
}

// f_α^r(x) = |r|^{-1} x^{1/r - 1} f_α(x^{1/r}), density of Z_α^r.
inline double log_power_density(StabilityIndex alpha, PowerExponent r, double x) {
  density_detail::require_positive(x);
  const double inv_r = 1.0 / r.value();
  const double y = std::exp(inv_r * std::log(x));
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("power transform leaves the representable range");
  }
  return -std::log(std::abs(r.value())) + (inv_r - 1.0) * std::log(x) +
         log_stable_density(alpha, y);
}

inline double power_density(StabilityIndex alpha, PowerExponent r, double x) {
  return std::exp(log_power_density(alpha, r, x));
}

// h_α^r(x) = (1 - r) f_α(x) + x f'_α(x) = -(r + φ(x)) f_α(x).
inline double h_function(StabilityIndex alpha, double r, double x) {
  const DensityPoint p = evaluate_density(alpha, x);
  return -(r + p.profile) * p.f();
}

// g_α^r(x) = (1 + 1/r) f_α(x) + (x/r) f'_α(x) = h_α^{-r}(x) / r, r > 0.
inline double g_function(StabilityIndex alpha, double r, double x) {
  if (!(r > 0.0)) throw DomainError("g_alpha^r requires r > 0");
  const DensityPoint p = evaluate_density(alpha, x);
  return (1.0 - p.profile / r) * p.f();
}

enum class BoundaryClass { kZero, kFinitePositive, kInfinite };

inline const char* to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::kZero:
      return "zero";
    case BoundaryClass::kFinitePositive:
      return "finite_positive";
    case BoundaryClass::kInfinite:
      return "infinite";
  }
  return "unknown";
}

struct BoundaryLimits {
  BoundaryClass boundary_class = BoundaryClass::kZero;
  // f_α^r(0+)
  double value = 0.0;
  // (f_α^r)'(0+), only for r = -α.
  std::optional<double> derivative;
};

inline constexpr double kBoundaryTieTolerance = 1e-12;

// Behaviour of f_α^r at 0+. For r = -α the density is
// f_α^{-α}(x) = 1/Γ(1-α) - x/Γ(1-2α) + O(x²).
inline BoundaryLimits boundary_limits(StabilityIndex alpha, PowerExponent r) {
  const double a = alpha.value();
  const double rr = r.value();
  BoundaryLimits out;
  if (std::abs(rr + a) <= kBoundaryTieTolerance) {
    out.boundary_class = BoundaryClass::kFinitePositive;
    out.value = rgamma(1.0 - a);
    out.derivative = -rgamma(1.0 - 2.0 * a);
  } else if (rr > -a) {
    out.boundary_class = BoundaryClass::kZero;
    out.value = 0.0;
  } else {
    out.boundary_class = BoundaryClass::kInfinite;
    out.value = std::numeric_limits<double>::infinity();
  }
  return out;
}

namespace density_detail {

// ∫ exp(log_w(t) + t) f_α(e^t) dt over [t_lo, t_hi], i.e. ∫ w(x) f(x) dx
// over [e^{t_lo}, e^{t_hi}].
inline quadrature::Result<1> log_x_integral(
    StabilityIndex alpha, const std::function<double(double)>& log_w,
    double t_lo, double t_hi, double rel_tol) {
  const int pieces = std::max(4, static_cast<int>(std::ceil(t_hi - t_lo)));
  std::vector<double> breaks(pieces + 1);
  for (int i = 0; i <= pieces; ++i) {
    breaks[i] = t_lo + (t_hi - t_lo) * i / pieces;
  }
  breaks.back() = t_hi;
  auto integrand = [&](double t) {
    const double lf = log_stable_density(alpha, std::exp(t));
    return std::array<double, 1>{std::exp(log_w(t) + t + lf)};
  };
  quadrature::Options opts;
  opts.rel_tol = rel_tol;
  return quadrature::integrate<1>(integrand, std::span<const double>(breaks),
                                  opts);
}

// Walks from t_start in steps of `step` until the log integrand has
// fallen `depth` below the largest value seen.
inline double find_cutoff(StabilityIndex alpha,
                          const std::function<double(double)>& log_w,
                          double t_start, double step, double depth) {
  double best = -std::numeric_limits<double>::infinity();
  double t = t_start;
  for (int i = 0; i < 4000; ++i) {
    const double v = log_w(t) + t + log_stable_density(alpha, std::exp(t));
    best = std::max(best, v);
    if (v < best - depth) return t;
    t += step;
  }
  throw AccuracyError("integrand does not decay", t, 0.0);
}

inline constexpr double kCutoffDepth = 55.0;
inline constexpr double kMomentRelTol = 1e-11;

}  // namespace density_detail

// E[Z_α^s] for s < α, by quadrature below x* and the integrated series
// above it. Closed form for checking: Γ(1 - s/α) / Γ(1 - s).
inline double mellin(StabilityIndex index, double s) {
  const double alpha = index.value();
  if (!(s < alpha)) {
    throw DomainError("E[Z^s] diverges for s >= alpha");
  }
  const double x_star = series_switch_point(alpha);
  const double t_hi = std::log(x_star);
  auto log_w = [s](double t) { return s * t; };
  const double t_lo = density_detail::find_cutoff(
      index, log_w, std::min(0.0, t_hi), -1.0, density_detail::kCutoffDepth);
  const auto body = density_detail::log_x_integral(
      index, log_w, t_lo, t_hi, density_detail::kMomentRelTol);
  // ∫_{x*}^∞ x^s f = Σ c_n x*^{s-αn} / (αn - s)
  double tail = 0.0;
  for (int n = 1; n <= 400; ++n) {
    const double an = alpha * n;
    const double env = std::exp(std::lgamma(1.0 + an) - std::lgamma(n + 1.0) +
                                (s - an) * t_hi) /
                       (kPi * (an - s));
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    tail += sign * std::sin(kPi * an) * env;
    if (env < 1e-18 * std::abs(tail) && n > 2) break;
  }
  return body.value[0] + tail;
}

// ∫_0^∞ f_α = 1, computed numerically.
inline double total_mass(StabilityIndex alpha) { return mellin(alpha, 0.0); }

// ∫_0^∞ e^{-λx} f_α(x) dx; equals exp(-λ^α).
inline double laplace_transform(StabilityIndex index, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Laplace argument must be positive");
  auto log_w = [lambda](double t) { return -lambda * std::exp(t); };
  const double t_lo =
      density_detail::find_cutoff(index, log_w, 0.0, -1.0, density_detail::kCutoffDepth);
  const double t_hi = std::max(
      density_detail::find_cutoff(index, log_w, 0.0, 0.5, density_detail::kCutoffDepth),
      std::log(60.0 / lambda));
  const auto body = density_detail::log_x_integral(index, log_w, t_lo, t_hi,
                                                   density_detail::kMomentRelTol);
  return body.value[0];
}

// ∫_0^∞ e^{-λx} h_α^r(x) dx; equals (αλ^α - r) exp(-λ^α).
inline double laplace_transform_h(StabilityIndex index, double r, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Laplace argument must be positive");
  auto log_w = [lambda](double t) { return -lambda * std::exp(t); };
  const double t_lo =
      density_detail::find_cutoff(index, log_w, 0.0, -1.0, density_detail::kCutoffDepth);
  const double t_hi = std::max(
      density_detail::find_cutoff(index, log_w, 0.0, 0.5, density_detail::kCutoffDepth),
      std::log(60.0 / lambda));
  const int pieces = std::max(4, static_cast<int>(std::ceil(t_hi - t_lo)));
  std::vector<double> breaks(pieces + 1);
  for (int i = 0; i <= pieces; ++i) breaks[i] = t_lo + (t_hi - t_lo) * i / pieces;
  auto integrand = [&](double t) {
    const double x = std::exp(t);
    const DensityPoint p = evaluate_density(index, x);
    return std::array<double, 1>{
        -(r + p.profile) * std::exp(log_w(t) + t + p.log_f)};
  };
  quadrature::Options opts;
  opts.rel_tol = density_detail::kMomentRelTol;
  return quadrature::integrate<1>(integrand, std::span<const double>(breaks),
                                  opts)
      .value[0];
}

}  // namespace stablemodes

#endif  // STABLEMODES_DENSITY_HPP_
