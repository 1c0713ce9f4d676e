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

#include "stablemodes/kanter.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stablemodes/errors.hpp"

namespace stablemodes {
namespace {

using oracle::Big;

Big big_b(double alpha, const Big& u) {
  const Big a = alpha;
  return pow(sin(u) / sin(a * u), a) * pow(sin(u) / sin((1 - a) * u), 1 - a);
}

TEST(Kanter, HalfClosedForm) {
  const KanterEval mid = b_alpha(StabilityIndex(0.5), kPi / 2);
  EXPECT_NEAR(mid.b, std::sqrt(2.0), 1e-15);
  double worst = 0.0;
  for (int i = 1; i < 2000; ++i) {
    const double u = kPi * i / 2000;
    worst = std::max(worst, std::abs(b_alpha(StabilityIndex(0.5), u).b - 2 * std::cos(u / 2)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Kanter, SmallAngleLimit) {
  const double a = 0.3;
  const double limit = std::pow(a, -a) * std::pow(1 - a, -(1 - a));
  EXPECT_NEAR(limit, 1.842022775037313256, 1e-15);
  EXPECT_NEAR(b_alpha(StabilityIndex(a), 1e-9).b, limit, 1e-14);
  EXPECT_NEAR(std::exp(log_b_alpha(a, 0.0)), limit, 1e-14);
}

TEST(Kanter, VanishesAtPi) {
  const KanterEval e = b_alpha(StabilityIndex(0.3), kPi - 1e-9);
  EXPECT_GT(e.b, 0.0);
  EXPECT_LT(e.b, 1e-8);
}

TEST(Kanter, RejectsOutsideOpenInterval) {
  EXPECT_THROW(b_alpha(StabilityIndex(0.3), 0.0), DomainError);
  EXPECT_THROW(b_alpha(StabilityIndex(0.3), kPi), DomainError);
  EXPECT_THROW(a_alpha(0.3, -0.1), DomainError);
  EXPECT_THROW(a_alpha(1.5, 1.0), DomainError);
}

TEST(Kanter, AgainstHighPrecisionDirect) {
  for (double a : {0.1, 0.3, 0.62, 0.9}) {
    for (double u : {1e-3, 0.2, 1.0, 2.0, 3.0, 3.14}) {
      const double ref = static_cast<double>(big_b(a, Big(u)));
      EXPECT_NEAR(b_alpha(StabilityIndex(a), u).b, ref, 2e-15 * ref) << a << " " << u;
    }
  }
  const double b03 = b_alpha(StabilityIndex(0.3), 1.0).b;
  EXPECT_NEAR(b03, 1.650213515922244357, 1e-15);
}

TEST(Kanter, DerivativesAgainstHighPrecisionDifferences) {
  const Big h("1e-20");
  for (double a : {0.2, 0.5, 0.85}) {
    for (double u : {0.1, 1.0, 2.5}) {
      const Big bu(u);
      const Big d1 = (big_b(a, bu + h) - big_b(a, bu - h)) / (2 * h);
      const Big d2 = (big_b(a, bu + h) - 2 * big_b(a, bu) + big_b(a, bu - h)) / (h * h);
      const KanterEval e = b_alpha(StabilityIndex(a), u);
      EXPECT_NEAR(e.b_prime, static_cast<double>(d1), 1e-12) << a << " " << u;
      EXPECT_NEAR(e.b_second, static_cast<double>(d2), 1e-11) << a << " " << u;
    }
  }
}

TEST(Kanter, Symmetric) {
  for (double a : {0.1, 0.25, 0.4}) {
    for (double u : {0.01, 0.7, 1.9, 3.1}) {
      const KanterEval x = b_alpha(StabilityIndex(a), u);
      const KanterEval y = b_alpha(StabilityIndex(1 - a), u);
      EXPECT_NEAR(x.b, y.b, 2e-15 * x.b);
      EXPECT_NEAR(x.b_prime, y.b_prime, 1e-14);
      EXPECT_NEAR(x.b_second, y.b_second, 1e-13);
    }
  }
}

TEST(AAlpha, Basics) {
  for (double u : {0.01, 1.0, 3.0}) EXPECT_NEAR(a_alpha(1.0, u), 0.0, 1e-15);
  EXPECT_NEAR(a_alpha(0.3, 1.0), 0.32772582719541755111, 1e-15);
  // Small-u expansion (1 - c²)u/3.
  EXPECT_NEAR(a_alpha(0.3, 1e-6), (1 - 0.09) * 1e-6 / 3, 1e-18);
}

TEST(AAlpha, OrderedForSmallIndex) {
  for (double a : {0.1, 0.3, 0.5}) {
    for (int i = 1; i < 1000; ++i) {
      const double u = kPi * i / 1000;
      EXPECT_GE(a_alpha(a, u) - a_alpha(1 - a, u), -1e-14) << a << " " << u;
    }
  }
}

TEST(AAlpha, DerivativeMatchesDifference) {
  for (double c : {0.2, 0.7}) {
    for (double u : {0.05, 1.3, 3.0}) {
      const double h = 1e-6;
      const double fd = (a_alpha(c, u + h) - a_alpha(c, u - h)) / (2 * h);
      EXPECT_NEAR(a_alpha_prime(c, u), fd, 1e-8 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(EulerSum, MatchesDirectAtQuarter) {
  const double a = 0.25;
  const double u = kPi / 2;
  const EulerSum s = euler_cotangent_sum(a, u, euler_terms_for(1e-12));
  const double direct = a * a_alpha(a, u) - (1 - a) * a_alpha(1 - a, u);
  EXPECT_LE(s.tail_bound, 1e-12);
  EXPECT_NEAR(s.value, direct, 1e-10);
  EXPECT_LE(s.value, 0.0);
}

TEST(EulerSum, TailBoundHolds) {
  // Doubling the truncation moves the value by less than the bound.
  for (double u : {0.5, 2.0, 3.1}) {
    const EulerSum s = euler_cotangent_sum(0.3, u, 500);
    const EulerSum t = euler_cotangent_sum(0.3, u, 100000);
    EXPECT_LE(std::abs(s.value - t.value), s.tail_bound) << u;
  }
}

TEST(Lemma1, HalfMakesInequalityFourVanish) {
  const Lemma1Report r = check_lemma1_inequalities(StabilityIndex(0.5), 2000);
  EXPECT_LE(std::abs(r.max_ineq4), 1e-15);
}

TEST(Lemma1, QuarterOnFineGrid) {
  const Lemma1Report r = check_lemma1_inequalities(StabilityIndex(0.25), 10000);
  EXPECT_LE(r.max_violation(), 1e-12);
  EXPECT_LE(r.max_euler_mismatch, 1e-10);
  EXPECT_LE(r.euler_tail_bound, 1e-12);
  EXPECT_TRUE(r.euler_termwise_negative);
}

TEST(Lemma1, NineIndices) {
  for (int i = 0; i < 9; ++i) {
    const double a = 0.05 + 0.1125 * i;
    const Lemma1Report r = check_lemma1_inequalities(StabilityIndex(a), 10000);
    EXPECT_LE(r.max_b_prime, 1e-12) << a;
    EXPECT_LE(r.max_b_second, 1e-10) << a;
    EXPECT_LE(r.max_violation(), 1e-10) << a;
  }
}

TEST(Lemma1, RejectsTinyGrid) {
  EXPECT_THROW(check_lemma1_inequalities(StabilityIndex(0.3), 1), DomainError);
}

}  // namespace
}  // namespace stablemodes
