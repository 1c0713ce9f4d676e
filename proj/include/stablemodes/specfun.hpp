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

#ifndef STABLEMODES_SPECFUN_HPP_
#define STABLEMODES_SPECFUN_HPP_

// Mittag-Leffler function E_α on the negative half-line, its derivative,
// and the derived functions
//
//   U_α(y) = Γ(1-α) y E_α(-y),       V_α(x) = x^{2α} Γ(1-α) E'_α(-x^α).
//
// Three regimes: the power series near 0, a Laplace-type integral for
// moderate arguments, and the algebraic asymptotic expansion at infinity.
// The integral regime uses, with D(z) = z² + 2z cos(πα) + 1,
//
//   I0(y) = ∫_0^∞ exp(-w^{1/α}) / D(w/y) dw
//   I1(y) = ∫_0^∞ w^{1/α} exp(-w^{1/α}) / D(w/y) dw
//
// from which E_α(-y) = sin(πα) I0 / (πα y), E'_α(-y) = sin(πα) I1 / (πα² y²),
// U_α(y) = I0 / Γ(1+α) and V_α(y^{1/α}) = I1 / (α Γ(1+α)).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "stablemodes/errors.hpp"
#include "stablemodes/quadrature.hpp"
#include "stablemodes/types.hpp"

namespace stablemodes {

// 1/Γ(x), which is entire: zero at the non-positive integers.
inline double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) return 0.0;
  return 1.0 / g;
}

namespace ml {

inline constexpr double kAsymptoticThreshold = 1e3;

// Relative round-off floor added to quadrature error estimates.
inline constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

// Largest y for which the power series is used.
inline double series_threshold(double alpha) {
  return alpha >= 0.05 ? 1.0 : 0.5;
}

struct Pair {
  double e = 0.0;        // E_α(-y)
  double e_prime = 0.0;  // E'_α(-y)
  double err_e = 0.0;
  double err_e_prime = 0.0;
};

// Power series for E_α(-y) and E'_α(-y).
inline Pair series(double alpha, double y) {
  Pair p;
  if (y == 0.0) {
    p.e = 1.0;
    p.e_prime = rgamma(1.0 + alpha);
    return p;
  }
  const double log_y = std::log(y);
  double abs_e = 0.0;
  double abs_ep = 0.0;
  double last_e = 0.0;
  double last_ep = 0.0;
  constexpr int kMaxTerms = 20000;
  int n = 0;
  for (; n < kMaxTerms; ++n) {
    const double mag = std::exp(n * log_y - std::lgamma(1.0 + alpha * n));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double te = sign * mag;
    p.e += te;
    abs_e += mag;
    last_e = mag;
    // n-th term of the derivative series uses index n + 1.
    const double mag_p =
        (n + 1) * std::exp(n * log_y - std::lgamma(1.0 + alpha * (n + 1)));
    p.e_prime += sign * mag_p;
    abs_ep += mag_p;
    last_ep = mag_p;
    const bool decaying = alpha * n > 2.0 || n > 60;
    if (decaying && mag < 1e-18 * std::max(1.0, std::abs(p.e)) &&
        mag_p < 1e-18 * std::max(1.0, std::abs(p.e_prime))) {
      break;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  p.err_e = last_e + 4.0 * eps * abs_e;
  p.err_e_prime = last_ep + 4.0 * eps * abs_ep;
  if (n == kMaxTerms) {
    throw AccuracyError("Mittag-Leffler series did not converge", p.e,
                        p.err_e);
  }
  return p;
}

struct Integrals {
  double i0 = 0.0;
  double i1 = 0.0;
  double err0 = 0.0;
  double err1 = 0.0;
  bool converged = false;
};

inline Integrals integrals(double alpha, double y, double rel_tol = 1e-13) {
  const double c = std::cos(kPi * alpha);
  const double inv_alpha = 1.0 / alpha;
  const double w_max = std::pow(700.0, alpha);
  auto integrand = [&](double w) {
    const double z = w / y;
    const double d = z * z + 2.0 * z * c + 1.0;
    const double p = std::pow(w, inv_alpha);
    const double e = std::exp(-p) / d;
    return std::array<double, 2>{e, p * e};
  };
  std::vector<double> breaks = {0.0, w_max};
  for (double b : {y * std::max(0.0, -c), y, 1.0}) {
    if (b > 0.0 && b < w_max) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  quadrature::Options opts;
  opts.rel_tol = rel_tol;
  const auto r = quadrature::integrate<2>(integrand, std::span<const double>(breaks), opts);
  return {r.value[0], r.value[1], r.abs_error[0], r.abs_error[1], r.converged};
}

inline Pair asymptotic(double alpha, double y) {
  Pair p;
  constexpr int kMaxOrder = 12;
  double prev = std::numeric_limits<double>::infinity();
  int k = 1;
  for (; k <= kMaxOrder; ++k) {
    const double env_bound =
        std::pow(y, -k) * std::exp(std::lgamma(alpha * k)) / kPi;
    if (env_bound > prev) break;
    prev = env_bound;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    p.e += sign * std::pow(y, -k) * rgamma(1.0 - alpha * k);
    p.e_prime += sign * k * std::pow(y, -k - 1) * rgamma(1.0 - alpha * k);
  }
  // |1/Γ(1-s)| ≤ Γ(s)/π for s > 0 bounds the first omitted term.
  const double bound = std::pow(y, -k) * std::exp(std::lgamma(alpha * k)) / kPi;
  p.err_e = bound + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(p.e);
  p.err_e_prime = k * bound / y +
                  4.0 * std::numeric_limits<double>::epsilon() * std::abs(p.e_prime);
  return p;
}

inline void require_converged(const Integrals& in, double value, double err) {
  if (!in.converged) {
    throw AccuracyError("Mittag-Leffler quadrature did not converge", value,
                        err);
  }
}

}  // namespace ml

// E_α(x) for x ≤ 0.
inline EvalResult mittag_leffler(StabilityIndex alpha, double x) {
  if (!(x <= 0.0)) throw DomainError("mittag_leffler requires x <= 0");
  const double a = alpha.value();
  const double y = -x;
  if (y <= ml::series_threshold(a)) {
    const ml::Pair p = ml::series(a, y);
    return {p.e, p.err_e, Regime::kSeries};
  }
  if (y > ml::kAsymptoticThreshold) {
    const ml::Pair p = ml::asymptotic(a, y);
    return {p.e, p.err_e, Regime::kAsymptotic};
  }
  const ml::Integrals in = ml::integrals(a, y);
  const double scale = std::sin(kPi * a) / (kPi * a * y);
  EvalResult out{scale * in.i0, scale * in.err0, Regime::kIntegral};
  out.abs_error_estimate += ml::kRoundoff * std::abs(out.value);
  ml::require_converged(in, out.value, out.abs_error_estimate);
  return out;
}

// E'_α(x) for x ≤ 0.
inline EvalResult mittag_leffler_prime(StabilityIndex alpha, double x) {
  if (!(x <= 0.0)) throw DomainError("mittag_leffler_prime requires x <= 0");
  const double a = alpha.value();
  const double y = -x;
  if (y <= ml::series_threshold(a)) {
    const ml::Pair p = ml::series(a, y);
    return {p.e_prime, p.err_e_prime, Regime::kSeries};
  }
  if (y > ml::kAsymptoticThreshold) {
    const ml::Pair p = ml::asymptotic(a, y);
    return {p.e_prime, p.err_e_prime, Regime::kAsymptotic};
  }
  const ml::Integrals in = ml::integrals(a, y);
  const double scale = std::sin(kPi * a) / (kPi * a * a * y * y);
  EvalResult out{scale * in.i1, scale * in.err1, Regime::kIntegral};
  out.abs_error_estimate += ml::kRoundoff * std::abs(out.value);
  ml::require_converged(in, out.value, out.abs_error_estimate);
  return out;
}

// U_α(x) = Γ(1-α) x E_α(-x), x ≥ 0.
inline double u_alpha(StabilityIndex alpha, double x) {
  if (!(x >= 0.0)) throw DomainError("u_alpha requires x >= 0");
  const double a = alpha.value();
  if (x == 0.0) return 0.0;
  if (x <= ml::series_threshold(a) || x > ml::kAsymptoticThreshold) {
    return std::tgamma(1.0 - a) * x * mittag_leffler(alpha, -x).value;
  }
  const ml::Integrals in = ml::integrals(a, x);
  const double value = in.i0 / std::tgamma(1.0 + a);
  ml::require_converged(in, value, in.err0);
  return value;
}

// V_α(x) = x^{2α} Γ(1-α) E'_α(-x^α), x ≥ 0.
inline double v_alpha(StabilityIndex alpha, double x) {
  if (!(x >= 0.0)) throw DomainError("v_alpha requires x >= 0");
  const double a = alpha.value();
  if (x == 0.0) return 0.0;
  const double y = std::pow(x, a);
  if (y <= ml::series_threshold(a) || y > ml::kAsymptoticThreshold) {
    return std::tgamma(1.0 - a) * y * y *
           mittag_leffler_prime(alpha, -y).value;
  }
  const ml::Integrals in = ml::integrals(a, y);
  const double value = in.i1 / (a * std::tgamma(1.0 + a));
  ml::require_converged(in, value, in.err1);
  return value;
}

}  // namespace stablemodes

#endif  // STABLEMODES_SPECFUN_HPP_
