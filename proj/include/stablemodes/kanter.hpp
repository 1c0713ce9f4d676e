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

#ifndef STABLEMODES_KANTER_HPP_
#define STABLEMODES_KANTER_HPP_

// The Kanter function
//
//   b_α(u) = (sin u / sin αu)^α (sin u / sin (1-α)u)^{1-α},   0 < u < π,
//
// its first two derivatives, the auxiliary functions
// A_c(u) = c cot(cu) - cot(u), and a grid certificate for the
// concavity inequalities of b_α.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "stablemodes/errors.hpp"
#include "stablemodes/types.hpp"

namespace stablemodes {

namespace kanter_detail {

// π - kPi, the rounding error of the double nearest to π.
inline constexpr double kPiLow = 1.2246467991473532e-16;

// sin(u) on (0, π) without losing relative accuracy near π.
inline double sin_open(double u) {
  return u > 0.5 * kPi ? std::sin((kPi - u) + kPiLow) : std::sin(u);
}

// log(sin x / x) for 0 < x < π.
inline double log_sinc(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return -x2 * (1.0 / 6.0 +
                  x2 * (1.0 / 180.0 +
                        x2 * (1.0 / 2835.0 +
                              x2 * (1.0 / 37800.0 + x2 / 467775.0))));
  }
  return std::log(sin_open(x) / x);
}

// Coefficients a_n of cot z = 1/z - Σ a_n z^{2n-1}.
inline constexpr std::array<double, 7> kCotSeries = {
    1.0 / 3.0,          1.0 / 45.0,       2.0 / 945.0,
    1.0 / 4725.0,       2.0 / 93555.0,    1382.0 / 638512875.0,
    4.0 / 18243225.0};

inline constexpr double kSeriesCutoff = 0.25;

inline void require_open_interval(double u) {
  if (!(u > 0.0 && u < kPi)) {
    throw DomainError("Kanter functions are defined on (0, pi), got u = " +
                      std::to_string(u));
  }
}

}  // namespace kanter_detail

// A_c(u) = c cot(cu) - cot(u) for c in (0, 1] and u in (0, π).
inline double a_alpha(double c, double u) {
  kanter_detail::require_open_interval(u);
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("A_c requires c in (0, 1]");
  if (u < kanter_detail::kSeriesCutoff) {
    const double u2 = u * u;
    const double c2 = c * c;
    double c_pow = c2;
    double u_pow = u;
    double sum = 0.0;
    for (double a : kanter_detail::kCotSeries) {
      sum += a * (1.0 - c_pow) * u_pow;
      c_pow *= c2;
      u_pow *= u2;
    }
    return sum;
  }
  return c / std::tan(c * u) - std::cos(u) / kanter_detail::sin_open(u);
}

// d/du A_c(u) = csc²(u) - c² csc²(cu).
inline double a_alpha_prime(double c, double u) {
  kanter_detail::require_open_interval(u);
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("A_c requires c in (0, 1]");
  if (u < kanter_detail::kSeriesCutoff) {
    const double u2 = u * u;
    const double c2 = c * c;
    double c_pow = c2;
    double u_pow = 1.0;
    double sum = 0.0;
    int order = 1;
    for (double a : kanter_detail::kCotSeries) {
      sum += a * (1.0 - c_pow) * order * u_pow;
      c_pow *= c2;
      u_pow *= u2;
      order += 2;
    }
    return sum;
  }
  const double s = kanter_detail::sin_open(u);
  const double sc = std::sin(c * u);
  return 1.0 / (s * s) - c * c / (sc * sc);
}

// log b_α(u), continuous up to both endpoints of (0, π).
inline double log_b_alpha(double alpha, double u) {
  using kanter_detail::log_sinc;
  const double beta = 1.0 - alpha;
  const double at_zero = -alpha * std::log(alpha) - beta * std::log(beta);
  if (u <= 0.0) return at_zero;
  return at_zero + log_sinc(u) - alpha * log_sinc(alpha * u) -
         beta * log_sinc(beta * u);
}

struct KanterEval {
  double u = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  double b_second = 0.0;
};

inline KanterEval b_alpha(StabilityIndex index, double u) {
  kanter_detail::require_open_interval(u);
  const double alpha = index.value();
  const double beta = 1.0 - alpha;
  KanterEval out;
  out.u = u;
  out.b = std::exp(log_b_alpha(alpha, u));
  if (u <= 0.5 * kPi) {
    const double aa = a_alpha(alpha, u);
    const double ab = a_alpha(beta, u);
    const double daa = a_alpha_prime(alpha, u);
    const double dab = a_alpha_prime(beta, u);
    out.b_prime = -out.b * (alpha * aa + beta * ab);
    const double diff = aa - ab;
    out.b_second = out.b * (alpha * (aa * aa - daa) + beta * (ab * ab - dab) -
                            alpha * beta * diff * diff);
  } else {
    // b = sin(u) K(u) with K smooth at π; avoids the 1/(π-u)² cancellation.
    const double su = kanter_detail::sin_open(u);
    const double cu = std::cos(u);
    const double k = out.b / su;
    const double sa = std::sin(alpha * u);
    const double sb = std::sin(beta * u);
    const double p =
        alpha * alpha * std::cos(alpha * u) / sa + beta * beta * std::cos(beta * u) / sb;
    const double dp = -(alpha * alpha * alpha / (sa * sa) +
                        beta * beta * beta / (sb * sb));
    out.b_prime = k * (cu - p * su);
    out.b_second = k * (-su - 2.0 * p * cu + (p * p - dp) * su);
  }
  return out;
}

// Partial-fraction form of α A_α(u) - β A_β(u) for α ≤ β = 1 - α. From
// π cot(πz) = 1/z + 2z Σ 1/(z² - n²) with u = πz,
//
//   α A_α - β A_β = (2αβ(β-α) z/π) Σ_{n≥1} n²(n² + (1+αβ)z²) / (D_n),
//   D_n = (z²-n²)(α²z²-n²)(β²z²-n²).
//
// The summands behave like -1/n²; that part is summed exactly (-π²/6) and
// the O(n⁻⁴) remainders r_n are summed numerically. Every r_n is negative
// on (0, π), and for terms ≥ 10 the omitted tail is at most
// |prefactor| · 1.03 z² / terms³ (comparison with ∫ n⁻⁴).
struct EulerSum {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
  // True when every remainder term had the expected (negative) sign.
  bool termwise_negative = true;
};

inline EulerSum euler_cotangent_sum(double alpha, double u, int terms) {
  kanter_detail::require_open_interval(u);
  if (terms < 10) throw DomainError("Euler sum needs at least 10 terms");
  const double a = std::min(alpha, 1.0 - alpha);
  const double b = 1.0 - a;
  const double z = u / kPi;
  const double z2 = z * z;
  const double ab = a * b;
  const double c4 = 3.0 - ab;
  const double c2 = (a * a + b * b + ab * ab) * z2;
  const double c0 = ab * ab * z2 * z2;
  const double prefactor = 2.0 * ab * (b - a) * z / kPi;
  // 1 - z² without cancellation near u = π.
  const double w = ((kPi - u) + kanter_detail::kPiLow) / kPi;
  const double one_minus_z2 = w * (2.0 - w);
  EulerSum out;
  out.terms = terms;
  double sum = 0.0;
  // Smallest terms first.
  for (int n = terms; n >= 1; --n) {
    const double n2 = static_cast<double>(n) * n;
    const double first = n == 1 ? one_minus_z2 : n2 - z2;
    const double d = first * (n2 - a * a * z2) * (n2 - b * b * z2);
    const double r = -z2 * (n2 * (n2 * c4 - c2) + c0) / (n2 * d);
    if (!(r < 0.0)) out.termwise_negative = false;
    sum += r;
  }
  out.value = prefactor * (sum - kPi * kPi / 6.0);
  out.tail_bound = std::abs(prefactor) * 1.03 * z2 /
                   (static_cast<double>(terms) * terms * terms);
  return out;
}

// Number of summands needed for a tail bound below `target` (any α, u).
inline int euler_terms_for(double target) {
  // max over α of 2αβ(β-α)/π is below 0.2/π.
  const double worst = 0.2 / kPi * 1.03;
  return std::max(
      10, static_cast<int>(std::ceil(std::cbrt(worst / target))));
}

// Worst margins of the concavity certificate on a uniform grid of
// (kEndpointGuard, π - kEndpointGuard). Each `max_*` field is the largest
// value of a quantity the theory says is ≤ 0.
struct Lemma1Report {
  double alpha = 0.0;
  int grid = 0;
  double max_b_prime = -std::numeric_limits<double>::infinity();
  double max_b_second = -std::numeric_limits<double>::infinity();
  // α² cot(αu) A_α + β² cot(βu) A_β - αβ
  double max_ineq3 = -std::numeric_limits<double>::infinity();
  // (A_α - A_β)(α A_α - β A_β)
  double max_ineq4 = -std::numeric_limits<double>::infinity();
  // min(α,β)-ordered partial-fraction value of α A_α - β A_β
  double max_euler = -std::numeric_limits<double>::infinity();
  // |partial fraction - direct| relative to max(1, |direct|)
  double max_euler_mismatch = 0.0;
  double euler_tail_bound = 0.0;
  int euler_terms = 0;
  bool euler_termwise_negative = true;

  double max_violation() const {
    return std::max({0.0, max_b_prime, max_b_second, max_ineq3, max_ineq4,
                     max_euler});
  }
};

inline constexpr double kEndpointGuard = 1e-8;

inline Lemma1Report check_lemma1_inequalities(StabilityIndex index, int grid,
                                              double euler_tail_target = 1e-12) {
  if (grid < 2) throw DomainError("lemma 1 grid needs at least 2 points");
  const double alpha = index.value();
  const double beta = 1.0 - alpha;
  const double small = std::min(alpha, beta);
  const double large = 1.0 - small;
  Lemma1Report rep;
  rep.alpha = alpha;
  rep.grid = grid;
  rep.euler_terms = euler_terms_for(euler_tail_target);
  const double lo = kEndpointGuard;
  const double hi = kPi - kEndpointGuard;
  for (int i = 0; i < grid; ++i) {
    const double u = lo + (hi - lo) * i / (grid - 1);
    const KanterEval ev = b_alpha(index, u);
    rep.max_b_prime = std::max(rep.max_b_prime, ev.b_prime);
    rep.max_b_second = std::max(rep.max_b_second, ev.b_second);

    const double aa = a_alpha(alpha, u);
    const double ab = a_alpha(beta, u);
    const double ineq3 = alpha * alpha * aa / std::tan(alpha * u) +
                         beta * beta * ab / std::tan(beta * u) - alpha * beta;
    rep.max_ineq3 = std::max(rep.max_ineq3, ineq3);
    rep.max_ineq4 = std::max(rep.max_ineq4, (aa - ab) * (alpha * aa - beta * ab));

    const EulerSum es = euler_cotangent_sum(small, u, rep.euler_terms);
    const double direct = small * a_alpha(small, u) - large * a_alpha(large, u);
    rep.max_euler = std::max(rep.max_euler, es.value);
    rep.max_euler_mismatch =
        std::max(rep.max_euler_mismatch,
                 std::abs(es.value - direct) / std::max(1.0, std::abs(direct)));
    rep.euler_tail_bound = std::max(rep.euler_tail_bound, es.tail_bound);
    rep.euler_termwise_negative =
        rep.euler_termwise_negative && es.termwise_negative;
  }
  return rep;
}

}  // namespace stablemodes

#endif  // STABLEMODES_KANTER_HPP_
