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

#ifndef STABLEMODES_CMLAB_HPP_
#define STABLEMODES_CMLAB_HPP_

// Exact derivatives of G_{α,t}(λ) = (λ^α + t) e^{-λ^α} for rational α, t,
// finite-order complete monotonicity checks, and the log-convexity
// threshold of G_{α,t}.
//
// Derivatives live in the span of λ^{αj-k} e^{-λ^α}, indexed by (j, k):
//
//   d/dλ [λ^{αj-k} e^{-λ^α}] = (αj - k) λ^{α j-(k+1)} e^{-λ^α}
//                              - α λ^{α(j+1)-(k+1)} e^{-λ^α}.
//
// After n derivatives every term has k = n, and with μ = λ^{-α}
//
//   (-1)^n G^{(n)}(λ) = λ^{-n} e^{-λ^α} μ^{-(n+1)} Q_n(μ)
//
// for a polynomial Q_n with rational coefficients, so the sign question
// becomes a polynomial one on μ > 0, decided exactly with Sturm sequences.

#include <algorithm>
#include <array>
#include <span>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stablemodes/errors.hpp"
#include "stablemodes/quadrature.hpp"

namespace stablemodes::cm {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Σ c_{j,k} λ^{αj-k} e^{-λ^α}
struct ExpPolySum {
  Rational alpha;
  std::map<std::pair<int, int>, Rational> terms;

  double evaluate(double lambda) const {
    const double a = to_double(alpha);
    double sum = 0.0;
    for (const auto& [jk, c] : terms) {
      sum += to_double(c) * std::pow(lambda, a * jk.first - jk.second);
    }
    return sum * std::exp(-std::pow(lambda, a));
  }
};

inline void require_alpha(const Rational& alpha) {
  if (!(alpha > 0 && alpha <= 1)) {
    throw DomainError("exact calculus needs a rational alpha in (0, 1]");
  }
}

// G_{α,t}(λ) = (λ^α + t) e^{-λ^α}
inline ExpPolySum make_G(const Rational& alpha, const Rational& t) {
  require_alpha(alpha);
  ExpPolySum g;
  g.alpha = alpha;
  g.terms[{1, 0}] = 1;
  if (t != 0) g.terms[{0, 0}] = t;
  return g;
}

inline ExpPolySum derivative_once(const ExpPolySum& g) {
  ExpPolySum d;
  d.alpha = g.alpha;
  for (const auto& [jk, c] : g.terms) {
    const auto [j, k] = jk;
    const Rational power = g.alpha * j - k;
    if (power != 0) d.terms[{j, k + 1}] += c * power;
    d.terms[{j + 1, k + 1}] -= c * g.alpha;
  }
  for (auto it = d.terms.begin(); it != d.terms.end();) {
    it = it->second == 0 ? d.terms.erase(it) : std::next(it);
  }
  return d;
}

inline ExpPolySum derivative(int n, ExpPolySum g) {
  if (n < 0) throw DomainError("derivative order must be non-negative");
  for (int i = 0; i < n; ++i) g = derivative_once(g);
  return g;
}

// ----------------------------------------------------------------------
// Dense polynomials over Q, coefficient i multiplies μ^i.

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline double evaluate(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

inline Poly differentiate(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
  trim(d);
  return d;
}

// Remainder of a / b, b non-zero.
inline Poly remainder(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly quotient(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Positive rational c with p / c having coprime integer coefficients.
inline Rational content(const Poly& p) {
  Integer num = 0;
  Integer den = 1;
  for (const Rational& c : p) {
    if (c == 0) continue;
    num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(c));
    const Integer d = boost::multiprecision::denominator(c);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  if (num == 0) return 1;
  return Rational(boost::multiprecision::abs(num), den);
}

inline Poly primitive_part(const Poly& p) {
  const Rational c = content(p);
  Poly out = p;
  for (Rational& v : out) v /= c;
  return out;
}

inline int sign_variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int descartes_bound(const Poly& p) {
  std::vector<int> s;
  for (const Rational& c : p) s.push_back(sign_of(c));
  return sign_variations(s);
}

class SturmChain {
 public:
  explicit SturmChain(const Poly& p) {
    Poly a = p;
    trim(a);
    chain_.push_back(a);
    Poly b = differentiate(a);
    while (!b.empty()) {
      chain_.push_back(b);
      Poly r = remainder(chain_[chain_.size() - 2], b);
      for (Rational& c : r) c = -c;
      b = std::move(r);
    }
  }

  int variations_at(const Rational& x) const {
    std::vector<int> s;
    for (const Poly& q : chain_) s.push_back(sign_of(evaluate(q, x)));
    return sign_variations(s);
  }

  int variations_at_infinity() const {
    std::vector<int> s;
    for (const Poly& q : chain_) s.push_back(q.empty() ? 0 : sign_of(q.back()));
    return sign_variations(s);
  }

  // Distinct roots in (a, b].
  int roots_in(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
  }

 private:
  std::vector<Poly> chain_;
};

// Simplest rational (smallest denominator, then numerator) in the open
// interval (lo, hi), 0 ≤ lo < hi; hi may be absent for +∞.
inline Rational simplest_between(const Rational& lo, const std::optional<Rational>& hi) {
  const Integer fl = boost::multiprecision::numerator(lo) /
                     boost::multiprecision::denominator(lo);
  const Rational next = Rational(fl) + 1;
  if (!hi || next < *hi) return next;
  const Rational frac = lo - Rational(fl);
  // lo and hi share the integer part fl.
  const Rational inv_lo = 1 / (*hi - Rational(fl));
  if (frac == 0) {
    // (fl, hi): fl + 1 / (something above 1/(hi - fl)).
    return Rational(fl) + 1 / simplest_between(inv_lo, std::nullopt);
  }
  return Rational(fl) + 1 / simplest_between(inv_lo, 1 / frac);
}

enum class SignStatus { kNonNegative, kNegativeWitness, kInconclusive };

struct SignDecision {
  SignStatus status = SignStatus::kNonNegative;
  std::optional<Rational> witness;  // Q(witness) < 0
  std::string method;
};

inline constexpr int kMaxBisections = 4000;
inline constexpr int kRefineSteps = 48;

// Decides whether p ≥ 0 on (0, ∞) in exact arithmetic.
inline SignDecision decide_nonnegative(Poly p) {
  trim(p);
  SignDecision out;
  if (p.empty()) {
    out.method = "zero polynomial";
    return out;
  }
  // Factors of μ do not change signs on μ > 0.
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  p.erase(p.begin(), p.begin() + static_cast<long>(low));

  if (descartes_bound(p) == 0) {
    out.method = "descartes";
    if (p.back() < 0) {
      out.status = SignStatus::kNegativeWitness;
      out.witness = Rational(1);
    }
    return out;
  }

  const Poly square_free = quotient(p, gcd(p, differentiate(p)));
  const SturmChain sturm(square_free);
  // Cauchy bound for the positive roots.
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < square_free.size(); ++i) {
    const Rational ratio = boost::multiprecision::abs(square_free[i] / square_free.back());
    if (ratio > bound) bound = ratio;
  }
  bound += 1;

  // Isolate roots in (0, bound] by bisection.
  struct Interval {
    Rational a, b;
  };
  std::vector<Interval> isolated;
  std::vector<Interval> stack = {{Rational(0), bound}};
  int bisections = 0;
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const int n = sturm.roots_in(iv.a, iv.b);
    if (n == 0) continue;
    if (n == 1) {
      isolated.push_back(iv);
      continue;
    }
    if (++bisections > kMaxBisections) {
      out.status = SignStatus::kInconclusive;
      out.method = "sturm (bisection budget exhausted)";
      return out;
    }
    const Rational mid = (iv.a + iv.b) / 2;
    stack.push_back({mid, iv.b});
    stack.push_back({iv.a, mid});
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  out.method = "sturm";

  // Shrinks an isolating interval so its left end is strictly above x.
  auto push_right = [&](Interval& iv, const Rational& x) {
    while (iv.a <= x) {
      const Rational mid = (iv.a + iv.b) / 2;
      if (sturm.roots_in(mid, iv.b) == 1) {
        iv.a = mid;
      } else {
        iv.b = mid;
      }
    }
  };

  // Narrow every isolating interval so the gaps between roots are
  // resolved finely enough to pick a simple witness.
  for (Interval& iv : isolated) {
    for (int i = 0; i < kRefineSteps; ++i) {
      const Rational mid = (iv.a + iv.b) / 2;
      if (sturm.roots_in(mid, iv.b) == 1) {
        iv.a = mid;
      } else {
        iv.b = mid;
      }
    }
  }

  // Gaps between consecutive roots (0 is not a root after stripping μ).
  std::vector<std::pair<Rational, std::optional<Rational>>> gaps;
  Rational left = 0;
  bool left_is_root = false;
  for (Interval& iv : isolated) {
    if (left_is_root && iv.a <= left) push_right(iv, left);
    gaps.push_back({left, iv.a});
    left = iv.b;
    left_is_root = evaluate(square_free, iv.b) == 0;
  }
  gaps.push_back({left, std::nullopt});

  for (auto& [lo, hi] : gaps) {
    Rational sample;
    if (!hi) {
      sample = lo + 1;
    } else if (lo < *hi) {
      sample = (lo + *hi) / 2;
    } else {
      sample = lo;
    }
    if (evaluate(p, sample) < 0) {
      out.status = SignStatus::kNegativeWitness;
      // The simplest rational of the negative gap is a readable witness.
      Rational w = (hi && !(lo < *hi)) ? sample : simplest_between(lo, hi);
      if (evaluate(p, w) >= 0) w = sample;
      out.witness = w;
      return out;
    }
  }
  return out;
}

// ----------------------------------------------------------------------

// Q_n(μ) for G_{α,t}: (-1)^n times the coefficients of G^{(n)}, placed at
// degree n + 1 - j for the term λ^{αj - n}.
inline Poly q_polynomial(const Rational& alpha, const Rational& t, int n) {
  const ExpPolySum d = derivative(n, make_G(alpha, t));
  Poly q(n + 2);
  const int sign = n % 2 == 0 ? 1 : -1;
  for (const auto& [jk, c] : d.terms) {
    const int j = jk.first;
    if (jk.second != n || j < 0 || j > n + 1) {
      throw NumericalFault("unexpected term in the derivative expansion");
    }
    q[n + 1 - j] += c * sign;
  }
  trim(q);
  return q;
}

enum class CmStatus { kPass, kFail, kInconclusive };

inline const char* to_string(CmStatus s) {
  switch (s) {
    case CmStatus::kPass:
      return "pass";
    case CmStatus::kFail:
      return "fail";
    case CmStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct OrderResult {
  int order = 0;
  Poly q;
  SignDecision decision;
};

struct CmReport {
  Rational alpha;
  Rational t;
  int max_order = 0;
  CmStatus status = CmStatus::kPass;
  std::optional<int> first_failing_order;
  std::optional<Rational> witness_mu;
  // λ = μ^{-1/α}
  std::optional<double> witness_lambda;
  std::vector<OrderResult> orders;
};

// Checks (-1)^n G^{(n)} ≥ 0 on λ > 0 for n = 0 .. max_order.
inline CmReport cm_check(const Rational& alpha, const Rational& t, int max_order) {
  require_alpha(alpha);
  if (max_order < 1) throw DomainError("max_order must be at least 1");
  CmReport rep;
  rep.alpha = alpha;
  rep.t = t;
  rep.max_order = max_order;
  for (int n = 0; n <= max_order; ++n) {
    OrderResult o;
    o.order = n;
    o.q = q_polynomial(alpha, t, n);
    o.decision = decide_nonnegative(o.q);
    rep.orders.push_back(o);
    if (o.decision.status == SignStatus::kNegativeWitness) {
      rep.status = CmStatus::kFail;
      rep.first_failing_order = n;
      rep.witness_mu = o.decision.witness;
      rep.witness_lambda = std::pow(to_double(*o.decision.witness), -1.0 / to_double(alpha));
      return rep;
    }
    if (o.decision.status == SignStatus::kInconclusive) {
      rep.status = CmStatus::kInconclusive;
      rep.first_failing_order = n;
      return rep;
    }
  }
  return rep;
}

// ----------------------------------------------------------------------
// Log-convexity of G_{α,t}. With x = λ^α,
//   (log G)'' ∝ x (x² + (2t - 1/(1-α)) x + t² - t)   (positive factor),
// so G is log-convex iff the quadratic is ≥ 0 on x ≥ 0.

inline bool quadratic_criterion_holds(const Rational& alpha, const Rational& t) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
  const Rational b = 2 * t - 1 / (1 - alpha);
  const Rational c = t * t - t;
  if (c < 0) return false;
  return b >= 0 || b * b <= 4 * c;
}

struct LogConvexityThreshold {
  Rational t_threshold;
  // Which condition binds: "constant term" (t² - t ≥ 0) or "discriminant".
  std::string criterion;
};

inline LogConvexityThreshold log_convexity_threshold(const Rational& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
  // t ≥ 1 from the constant term; t ≥ 1/(4α(1-α)) from the discriminant
  // unless the linear coefficient is already non-negative.
  const Rational disc = 1 / (4 * alpha * (1 - alpha));
  const Rational linear = 1 / (2 * (1 - alpha));
  LogConvexityThreshold out;
  const Rational second = disc < linear ? disc : linear;
  if (second > 1) {
    out.t_threshold = second;
    out.criterion = "discriminant";
  } else {
    out.t_threshold = 1;
    out.criterion = "constant term";
  }
  if (!quadratic_criterion_holds(alpha, out.t_threshold)) {
    throw NumericalFault("log-convexity threshold fails its own criterion");
  }
  return out;
}

struct Remark5cCheck {
  bool log_convex = false;
  double mass = 0.0;
};

// Density x ↦ (αx^α + r) e^{-x^α} / ((1 + r) Γ(1 + 1/α)) on (0, ∞):
// log-convexity via the quadratic criterion with t = r/α, plus its mass.
inline Remark5cCheck remark5c_density_check(const Rational& alpha, const Rational& r) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
  if (!(r > 0)) throw DomainError("r must be positive");
  Remark5cCheck out;
  out.log_convex = quadratic_criterion_holds(alpha, r / alpha);
  const double a = to_double(alpha);
  const double rr = to_double(r);
  const double norm = (1.0 + rr) * std::tgamma(1.0 + 1.0 / a);
  // In log x; the upper end is where x^α = 800.
  const double t_lo = -40.0;
  const double t_hi = std::log(800.0) / a;
  const int pieces = static_cast<int>(std::ceil(t_hi - t_lo));
  std::vector<double> breaks(pieces + 1);
  for (int i = 0; i <= pieces; ++i) breaks[i] = t_lo + (t_hi - t_lo) * i / pieces;
  auto integrand = [&](double t) {
    const double x = std::exp(t);
    const double xa = std::exp(a * t);
    return std::array<double, 1>{x * (a * xa + rr) * std::exp(-xa) / norm};
  };
  out.mass = quadrature::integrate<1>(integrand, std::span<const double>(breaks))
                 .value[0];
  return out;
}

}  // namespace stablemodes::cm

#endif  // STABLEMODES_CMLAB_HPP_
