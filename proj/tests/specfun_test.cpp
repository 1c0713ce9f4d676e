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

#include "stablemodes/specfun.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stablemodes/errors.hpp"

namespace stablemodes {
namespace {

TEST(StabilityIndex, RejectsOutsideGuard) {
  EXPECT_THROW(StabilityIndex(0.0), DomainError);
  EXPECT_THROW(StabilityIndex(1.0), DomainError);
  EXPECT_THROW(StabilityIndex(-0.2), DomainError);
  EXPECT_NO_THROW(StabilityIndex(1.0 - 1e-6));
}

TEST(Gamma, ReciprocalKeepsSign) {
  EXPECT_NEAR(rgamma(-0.4), 1.0 / std::tgamma(-0.4), 1e-15);
  EXPECT_LT(rgamma(-0.4), 0.0);
  EXPECT_EQ(rgamma(0.0), 0.0);
  EXPECT_EQ(rgamma(-2.0), 0.0);
}

TEST(MittagLeffler, ValueAtZero) {
  for (double a : {0.1, 0.5, 0.9}) {
    EXPECT_EQ(mittag_leffler(StabilityIndex(a), 0.0).value, 1.0);
    EXPECT_NEAR(mittag_leffler_prime(StabilityIndex(a), 0.0).value, 1.0 / std::tgamma(1.0 + a),
                1e-15);
  }
}

TEST(MittagLeffler, ExponentialLimit) {
  const StabilityIndex a(1.0 - 1e-6);
  EXPECT_NEAR(mittag_leffler(a, -1.0).value, std::exp(-1.0), 1e-5);
  EXPECT_NEAR(mittag_leffler_prime(a, -1.0).value, std::exp(-1.0), 1e-5);
}

TEST(MittagLeffler, HalfAgainstHighPrecisionSeries) {
  const double ref = oracle::ml_series(0.5, -2.0, 200);
  EXPECT_NEAR(ref, std::exp(4.0) * std::erfc(2.0), 1e-14);
  const EvalResult e = mittag_leffler(StabilityIndex(0.5), -2.0);
  EXPECT_NEAR(e.value, ref, 1e-10);
  EXPECT_LE(std::abs(e.value - ref), std::max(e.abs_error_estimate, 1e-15));
  EXPECT_LE(e.abs_error_estimate, 1e-10);
}

TEST(MittagLeffler, DerivativeAgainstHighPrecisionSeries) {
  const double ref = oracle::ml_prime_series(0.7, -3.0, 300);
  EXPECT_NEAR(ref, 0.051288185329773191, 1e-15);
  const EvalResult e = mittag_leffler_prime(StabilityIndex(0.7), -3.0);
  EXPECT_NEAR(e.value, ref, 1e-10);
  EXPECT_LE(e.abs_error_estimate, 1e-10);
}

TEST(MittagLeffler, AccuracyContractUpToFifty) {
  for (double a : {0.3, 0.5, 0.7}) {
    for (double y : {0.3, 1.5, 4.0, 10.0, 50.0}) {
      // The series terms peak near exp(y^{1/α}); beyond ~1e52 the
      // 100-digit oracle loses the answer.
      const double peak = std::pow(y, 1.0 / a);
      if (peak > 120.0) continue;
      const int terms = static_cast<int>(3.0 * peak / a) + 100;
      const double ref = oracle::ml_series(a, -y, terms);
      const EvalResult e = mittag_leffler(StabilityIndex(a), -y);
      EXPECT_NEAR(e.value, ref, 1e-10) << a << " " << y;
      EXPECT_LE(std::abs(e.value - ref), e.abs_error_estimate + 1e-15) << a << " " << y;
    }
  }
}

TEST(MittagLeffler, FrozenValuesBeyondSeriesReach) {
  // 1100-digit series, 20000 terms.
  EXPECT_NEAR(mittag_leffler(StabilityIndex(0.3), -4.0).value, 0.16650174431551664825, 1e-14);
  EXPECT_NEAR(mittag_leffler(StabilityIndex(0.3), -10.0).value, 0.072649729072772085356, 1e-14);
}

TEST(MittagLeffler, SeriesAndQuadratureAgreeOnOverlap) {
  for (double a : {0.3, 0.5, 0.7}) {
    for (double y : {0.2, 0.5, 1.0, 1.5, 2.0}) {
      const ml::Pair s = ml::series(a, y);
      const ml::Integrals in = ml::integrals(a, y);
      const double e_quad = std::sin(kPi * a) / (kPi * a * y) * in.i0;
      const double ep_quad = std::sin(kPi * a) / (kPi * a * a * y * y) * in.i1;
      EXPECT_NEAR(s.e, e_quad, 1e-8) << a << " " << y;
      EXPECT_NEAR(s.e_prime, ep_quad, 1e-8) << a << " " << y;
    }
  }
}

TEST(MittagLeffler, DecreasingAndPositive) {
  for (double a : {0.2, 0.5, 0.8}) {
    double prev = 1.0;
    for (double y = 0.05; y <= 100.0; y += 0.05) {
      const double v = mittag_leffler(StabilityIndex(a), -y).value;
      ASSERT_GT(v, 0.0);
      ASSERT_LT(v, prev) << a << " " << y;
      prev = v;
    }
  }
}

TEST(MittagLeffler, AsymptoticNormalization) {
  // Γ(1-α) y E_α(-y) → 1.
  for (double a : {0.3, 0.7}) {
    EXPECT_NEAR(u_alpha(StabilityIndex(a), 1e4), 1.0, 1e-3);
  }
}

TEST(MittagLeffler, RejectsPositiveArgument) {
  EXPECT_THROW(mittag_leffler(StabilityIndex(0.5), 0.1), DomainError);
  EXPECT_THROW(mittag_leffler_prime(StabilityIndex(0.5), 0.1), DomainError);
}

TEST(UAlpha, Bounds) {
  EXPECT_EQ(u_alpha(StabilityIndex(0.3), 0.0), 0.0);
  const double far = u_alpha(StabilityIndex(0.3), 1e6);
  EXPECT_LE(far, 1.0);
  EXPECT_GT(far, 0.99);
  for (double t = -3; t <= 6; t += 0.05) {
    const double x = std::pow(10.0, t);
    EXPECT_LE(u_alpha(StabilityIndex(0.3), x), 1.0 + 1e-12);
    EXPECT_LE(u_alpha(StabilityIndex(0.75), x), 2.0 + 1e-12);
  }
}

TEST(UAlpha, MatchesDefinition) {
  for (double x : {0.5, 3.0, 20.0}) {
    const double def = std::tgamma(0.4) * x * oracle::ml_series(0.6, -x, 800);
    EXPECT_NEAR(u_alpha(StabilityIndex(0.6), x), def, 1e-10) << x;
  }
}

TEST(VAlpha, Bounds) {
  EXPECT_EQ(v_alpha(StabilityIndex(0.4), 0.0), 0.0);
  double sup4 = 0.0;
  double sup75 = 0.0;
  for (double t = -3; t <= 9; t += 0.02) {
    const double x = std::pow(10.0, t);
    sup4 = std::max(sup4, v_alpha(StabilityIndex(0.4), x));
    sup75 = std::max(sup75, v_alpha(StabilityIndex(0.75), x));
  }
  EXPECT_LE(sup4, 1.0 + 1e-12);
  EXPECT_LE(sup75, 2.0 + 1e-12);
  EXPECT_GT(sup75, 1.0);
}

TEST(VAlpha, MatchesDefinition) {
  const double a = 0.6;
  for (double x : {0.5, 3.0, 20.0}) {
    const double y = std::pow(x, a);
    const double def = std::pow(x, 2 * a) * std::tgamma(1 - a) * oracle::ml_prime_series(a, -y, 800);
    EXPECT_NEAR(v_alpha(StabilityIndex(a), x), def, 1e-10) << x;
  }
}

}  // namespace
}  // namespace stablemodes
