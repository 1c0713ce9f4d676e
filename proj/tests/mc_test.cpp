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

#include "stablemodes/mc.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stablemodes/errors.hpp"

namespace stablemodes::mc {
namespace {

BatchSpec batch(std::size_t n, std::uint64_t seed = 42, unsigned threads = 2) {
  BatchSpec s;
  s.seed = seed;
  s.n = n;
  s.threads = threads;
  return s;
}

TEST(Rng, ReproducibleAcrossThreadCounts) {
  const SampleBatch a = sample_Z(StabilityIndex(0.6), batch(20000, 9, 1));
  const SampleBatch b = sample_Z(StabilityIndex(0.6), batch(20000, 9, 4));
  const SampleBatch c = sample_Z(StabilityIndex(0.6), batch(20000, 10, 4));
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  EXPECT_EQ(a.descriptor, b.descriptor);
}

TEST(Rng, PrefixStable) {
  // Block seeding makes a shorter batch a prefix of a longer one.
  const SampleBatch a = sample_Z(StabilityIndex(0.3), batch(5000));
  const SampleBatch b = sample_Z(StabilityIndex(0.3), batch(9000));
  EXPECT_TRUE(std::equal(a.values.begin(), a.values.end(), b.values.begin()));
}

TEST(Rng, RejectsEmptyBatch) {
  EXPECT_THROW(sample_Z(StabilityIndex(0.3), batch(0)), DomainError);
}

TEST(SampleZ, PositiveValues) {
  for (double a : {0.05, 0.5, 0.95}) {
    const SampleBatch z = sample_Z(StabilityIndex(a), batch(20000));
    for (double v : z.values) ASSERT_GT(v, 0.0) << a;
  }
}

TEST(SampleZ, LaplaceAtSevenTenths) {
  const SampleBatch z = sample_Z(StabilityIndex(0.7), batch(1000000));
  const MeanEstimate m = mean_of(z.values, [](double x) { return std::exp(-x); });
  EXPECT_NEAR(m.mean, std::exp(-1.0), 3 * m.std_error);
}

TEST(SampleZ, KolmogorovSmirnovAtHalf) {
  const SampleBatch z = sample_Z(StabilityIndex(0.5), batch(100000));
  const double d = ks_one_sample(z.values, oracle::half_cdf);
  EXPECT_LE(d, ks_threshold_one_sample(z.n, kKsLevel));
}

TEST(SampleZ, ChiSquareAgainstDensity) {
  const StabilityIndex a(0.7);
  const SampleBatch z = sample_Z(a, batch(100000));
  const ChiSquare c = chi_square_test(z.values, [&](double x) { return stable_cdf(a, x).cdf; });
  EXPECT_EQ(c.dof, 49);
  EXPECT_GT(c.p_value, 1e-3);
}

TEST(SampleZ, MellinMoment) {
  const SampleBatch z = sample_Z(StabilityIndex(0.3), batch(200000));
  const MeanEstimate m = mean_of(z.values, [](double x) { return std::pow(x, 0.1); });
  EXPECT_NEAR(m.mean, mellin(StabilityIndex(0.3), 0.1), 3 * m.std_error);
  EXPECT_NEAR(mellin(StabilityIndex(0.3), 0.1), 1.2671547533216119, 1e-9);
}

TEST(Calibration, SelectsInverseIndex) {
  const CalibrationReport r = calibrate_kanter_exponent(42);
  ASSERT_EQ(r.candidates.size(), 3u);
  EXPECT_TRUE(r.unique);
  ASSERT_TRUE(r.selected);
  EXPECT_EQ(*r.selected, KanterExponent::kMinusInverseAlpha);
  for (const CalibrationCandidate& c : r.candidates) {
    EXPECT_EQ(c.pass, c.exponent == KanterExponent::kMinusInverseAlpha);
    if (c.pass) {
      EXPECT_LE(c.worst_z, 4.0);
    }
  }
}

TEST(SampleM, LaplaceTransform) {
  const SampleBatch m = sample_M(StabilityIndex(0.6), batch(200000));
  const MeanEstimate e = mean_of(m.values, [](double x) { return std::exp(-2 * x); });
  EXPECT_NEAR(e.mean, 1.0 / (1.0 + std::pow(2.0, 0.6)), 3 * e.std_error);
}

TEST(SampleM, DistributionFunction) {
  const StabilityIndex a(0.6);
  const SampleBatch m = sample_M(a, batch(50000));
  const double d = ks_one_sample(m.values, [&](double x) { return m_law_cdf(a, x); });
  EXPECT_LE(d, ks_threshold_one_sample(m.n, kKsLevel));
  for (double x : {0.2, 1.0, 5.0}) {
    const double h = 1e-5 * x;
    EXPECT_NEAR((m_law_cdf(a, x + h) - m_law_cdf(a, x - h)) / (2 * h), m_law_density(a, x), 1e-6);
  }
}

TEST(SampleM, HistogramDecreasing) {
  const SampleBatch m = sample_M(StabilityIndex(0.6), batch(200000));
  std::vector<double> counts(12, 0.0);
  const double width = 0.25;
  for (double x : m.values) {
    const auto k = static_cast<std::size_t>(x / width);
    if (k < counts.size()) counts[k] += 1.0;
  }
  for (std::size_t k = 1; k < counts.size(); ++k) {
    EXPECT_LE(counts[k], counts[k - 1] + 3 * std::sqrt(counts[k - 1])) << k;
  }
  EXPECT_GT(counts.front(), 2 * counts.back());
}

TEST(SampleX, LaplaceTransform) {
  const GLawSampler law(StabilityIndex(0.4), 0.4);
  EXPECT_GE(law.min_relative_density(), 0.0);
  EXPECT_LE(std::abs(law.mass_defect()), 1e-6);
  const SampleBatch x = sample_X(law, batch(200000));
  const MeanEstimate e = mean_of(x.values, [](double v) { return std::exp(-v); });
  EXPECT_NEAR(e.mean, 2 * std::exp(-1.0), 3 * e.std_error);
}

TEST(SampleX, DistributionFunction) {
  const StabilityIndex a(0.7);
  const double r = 3.0;
  const GLawSampler law(a, r);
  const SampleBatch x = sample_X(law, batch(20000));
  const double d = ks_one_sample(x.values, [&](double v) { return g_law_cdf(a, r, v).cdf; });
  EXPECT_LE(d, ks_threshold_one_sample(x.n, kKsLevel));
  // Quantile inverts the tabulated CDF.
  for (double v : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-6}) {
    EXPECT_NEAR(g_law_cdf(a, r, law.quantile(v)).cdf, v, 1e-6 * std::max(v, 1e-3)) << v;
  }
}

TEST(SampleX, BelowFrontierIsRejected) {
  EXPECT_THROW(GLawSampler(StabilityIndex(0.8), 1.0), PreconditionError);
  EXPECT_THROW(GLawSampler(StabilityIndex(0.3), 0.2), PreconditionError);
  EXPECT_THROW(GLawSampler(StabilityIndex(0.3), 0.0), PreconditionError);
  EXPECT_NO_THROW(GLawSampler(StabilityIndex(0.8), 1.5));
}

TEST(Statistics, KolmogorovQuantile) {
  EXPECT_NEAR(kolmogorov_quantile(0.05), 1.3580986393225505, 1e-9);
  EXPECT_NEAR(kolmogorov_quantile(1e-3), 1.9494746035043753, 1e-9);
  EXPECT_THROW(kolmogorov_quantile(0.0), DomainError);
}

TEST(Statistics, TwoSampleKs) {
  EXPECT_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3, 4}, {5, 6}), 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 3}, {2, 4}), 0.5);
}

TEST(Statistics, ReportPassRule) {
  EXPECT_TRUE(make_report(Statistic::kKS, 0.1, 0.1).pass);
  EXPECT_FALSE(make_report(Statistic::kKS, 0.1000001, 0.1).pass);
  EXPECT_STREQ(to_string(Statistic::kMellinGrid), "mellin_grid");
}

TEST(Identity, AdditiveAtFourTenths) {
  const IdentityCheck c = verify_identity(Identity::kAdditive, StabilityIndex(0.4), 0.5, batch(100000));
  ASSERT_EQ(c.reports.size(), 2u);
  EXPECT_EQ(c.reports[0].statistic, Statistic::kKS);
  EXPECT_EQ(c.reports[1].statistic, Statistic::kMellinGrid);
  for (const IdentityReport& r : c.reports) {
    EXPECT_TRUE(r.pass) << to_string(r.statistic) << " " << r.discrepancy << " / " << r.threshold;
  }
}

TEST(Identity, MultiplicativeAtThreeTenths) {
  const IdentityCheck c =
      verify_identity(Identity::kMultiplicative, StabilityIndex(0.3), 0.3, batch(100000));
  EXPECT_TRUE(c.pass()) << c.reports[0].discrepancy << " " << c.reports[1].detail;
}

TEST(Identity, DetectsWrongScale) {
  // Doubling the additive scale breaks the identity visibly.
  const StabilityIndex a(0.4);
  const auto spec = batch(100000);
  const SampleBatch m = sample_M(a, spec, kStreamM);
  const SampleBatch x = sample_X(a, 0.5, spec, kStreamX);
  const SampleBatch z = sample_Z(a, spec, kStreamZDirect);
  std::vector<double> wrong(spec.n);
  const double c = 2 * std::pow(0.4 / 0.5, 1 / 0.4);
  for (std::size_t i = 0; i < spec.n; ++i) wrong[i] = c * m.values[i] + x.values[i];
  EXPECT_GT(ks_two_sample(wrong, z.values), ks_threshold_two_sample(spec.n, spec.n, kKsLevel));
}

TEST(Identity, RejectsInvalidRegion) {
  EXPECT_THROW(verify_identity(Identity::kMultiplicative, StabilityIndex(0.5), 0.0, batch(100)),
               PreconditionError);
  EXPECT_THROW(verify_identity(Identity::kAdditive, StabilityIndex(0.8), 1.0, batch(100)),
               PreconditionError);
}

}  // namespace
}  // namespace stablemodes::mc
