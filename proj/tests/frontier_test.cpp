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

#include "stablemodes/frontier.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "stablemodes/errors.hpp"
#include "stablemodes/specfun.hpp"

namespace stablemodes {
namespace {

// Independent reference: 60-digit mpmath evaluation of the large-x series
// and the Mittag-Leffler series, maximized on a fine grid.
struct Reference {
  double alpha, R, R_tilde, R_hat;
};
constexpr Reference kReference[] = {
    {0.55, 0.558544085, 0.558545692, 0.561410857},
    {0.60, 0.637751515, 0.637802878, 0.650654631},
};

TEST(Frontier, IdentityZone) {
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    EXPECT_EQ(compute_R(StabilityIndex(a), 1e-4), a);
    EXPECT_EQ(compute_R_tilde(StabilityIndex(a), 1e-4), a);
    EXPECT_EQ(compute_R_hat(StabilityIndex(a), 1e-4), a);
  }
}

TEST(Frontier, IdentityZoneProfileBelowIndex) {
  // sup φ = α for α ≤ 1/2, approached at infinity.
  for (double a : {0.2, 0.45}) {
    const ProfileScan s = profile_maximum(StabilityIndex(a));
    EXPECT_LE(s.max_value, a + 1e-9);
    EXPECT_GT(s.max_value, a - 1e-3);
  }
}

TEST(Frontier, AgainstReference) {
  for (const Reference& ref : kReference) {
    const StabilityIndex a(ref.alpha);
    EXPECT_NEAR(compute_R(a, 1e-10), ref.R, 2e-9) << ref.alpha;
    EXPECT_NEAR(compute_R_tilde(a, 1e-10), ref.R_tilde, 2e-9) << ref.alpha;
    EXPECT_NEAR(compute_R_hat(a, 1e-10), ref.R_hat, 2e-9) << ref.alpha;
  }
}

TEST(Frontier, ThreeQuarters) {
  const StabilityIndex a(0.75);
  const double R = compute_R(a, 1e-3);
  EXPECT_GE(R, 1.0);
  EXPECT_LE(R, 1.5);
  const double Rt = compute_R_tilde(a, 1e-6);
  const double Rh = compute_R_hat(a, 1e-6);
  EXPECT_GT(Rt, compute_R(a, 1e-8));
  EXPECT_LE(Rt, 1.5);
  EXPECT_GT(Rh, Rt);
  EXPECT_LE(Rh, 1.5);
  const SupremumPoint p = R_tilde_point(a);
  EXPECT_GT(p.argmax, 1e-3);
  EXPECT_LT(p.argmax, 1e6);
}

TEST(Frontier, TildeIsScaledSupremumOfU) {
  for (double alpha : {0.6, 0.8}) {
    const StabilityIndex a(alpha);
    double sup = 0.0;
    for (double t = -3; t <= 6; t += 0.001) sup = std::max(sup, u_alpha(a, std::pow(10.0, t)));
    const double Rt = compute_R_tilde(a, 1e-8);
    EXPECT_GE(Rt, alpha * sup - 1e-12);
    EXPECT_NEAR(Rt, alpha * sup, 1e-7);
  }
}

TEST(Frontier, CriterionFlipsAtFrontier) {
  for (double alpha : {0.6, 0.8, 0.9}) {
    const StabilityIndex a(alpha);
    const double tol = 1e-6;
    const double R = compute_R(a, tol);
    EXPECT_LT(frontier_criterion(a, R - 5 * tol), 0.0);
    EXPECT_GE(frontier_criterion(a, R + 5 * tol), 0.0);
  }
}

TEST(Frontier, Cusp) {
  double prev = 1.0;
  for (double alpha : {0.51, 0.505, 0.501}) {
    const double R = compute_R(StabilityIndex(alpha), 1e-10);
    const double ratio = (R - alpha) / (alpha - 0.5);
    EXPECT_GE(ratio, 0.0);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
  EXPECT_LT(prev, 0.01);
  EXPECT_LE(compute_R(StabilityIndex(0.501), 1e-8) - 0.501, 5e-3);
}

TEST(Sweep, IdentityZone) {
  for (const FrontierPoint& p : sweep(0.1, 0.5, 5, 1e-4)) {
    EXPECT_TRUE(p.ok()) << p.status;
    EXPECT_NEAR(p.R, p.alpha, p.tol);
    EXPECT_NEAR(p.R_tilde, p.alpha, p.tol);
    EXPECT_NEAR(p.R_hat, p.alpha, p.tol);
  }
}

TEST(Sweep, BoundsAndOrdering) {
  const std::vector<FrontierPoint> pts = sweep(0.55, 0.95, 9, 1e-6);
  ASSERT_EQ(pts.size(), 9u);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const FrontierPoint& p = pts[i];
    EXPECT_TRUE(p.ok()) << p.status;
    EXPECT_NEAR(p.lower_bound, 1.0 / (4 * (1 - p.alpha)), 1e-12);
    EXPECT_NEAR(p.upper_bound,
                std::min(p.alpha / std::pow(std::sin(kPi * p.alpha), 2), p.alpha / (1 - p.alpha)),
                1e-12);
    EXPECT_GE(p.R, p.lower_bound - p.tol);
    EXPECT_LE(p.R, p.upper_bound + p.tol);
    EXPECT_LT(p.R, p.R_tilde);
    EXPECT_LT(p.R_tilde, p.R_hat);
    if (i > 0) {
      EXPECT_GT(p.R, pts[i - 1].R);
      EXPECT_GT(p.R_tilde, pts[i - 1].R_tilde);
      EXPECT_GT(p.R_hat, pts[i - 1].R_hat);
    }
  }
  EXPECT_GE(pts.back().R, 5.0);
}

TEST(Sweep, IndependentOfThreadCount) {
  const auto one = sweep(0.6, 0.9, 4, 1e-6, 1);
  const auto three = sweep(0.6, 0.9, 4, 1e-6, 3);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].R, three[i].R);
    EXPECT_EQ(one[i].R_hat, three[i].R_hat);
  }
}

TEST(Sweep, RejectsBadRange) {
  EXPECT_THROW(sweep(0.6, 0.5, 3, 1e-4), DomainError);
  EXPECT_THROW(sweep(0.5, 0.6, 0, 1e-4), DomainError);
  EXPECT_THROW(compute_R(StabilityIndex(0.6), 0.0), DomainError);
}

TEST(Classify, Examples) {
  const ModeProfile a = classify_point(StabilityIndex(0.3), PowerExponent(2.0), 1e-3);
  EXPECT_EQ(a.verdict, Verdict::kUnimodalNonmonotone);
  EXPECT_EQ(a.boundary_class, BoundaryClass::kZero);
  EXPECT_EQ(a.interior_maxima, 1);

  const ModeProfile b = classify_point(StabilityIndex(0.4), PowerExponent(-0.4), 1e-3);
  EXPECT_EQ(b.verdict, Verdict::kMonotone);
  EXPECT_EQ(b.interior_maxima, 0);

  const ModeProfile c = classify_point(StabilityIndex(0.9), PowerExponent(-1.0), 1e-3);
  EXPECT_EQ(c.verdict, Verdict::kNotUnimodal);
  EXPECT_EQ(c.boundary_class, BoundaryClass::kInfinite);
  EXPECT_GE(c.interior_maxima + (c.boundary_maximum ? 1 : 0), 2);
}

TEST(Classify, TieAtMinusAlphaAboveHalf) {
  const ModeProfile p = classify_point(StabilityIndex(0.7), PowerExponent(-0.7), 1e-3);
  EXPECT_EQ(p.boundary_class, BoundaryClass::kFinitePositive);
  EXPECT_EQ(p.verdict, Verdict::kUnimodalNonmonotone);
}

TEST(ModeMap, NineByNineAgrees) {
  std::vector<double> alphas;
  std::vector<double> rs;
  for (int i = 1; i <= 9; ++i) alphas.push_back(i / 10.0);
  for (int j = 0; j < 9; ++j) rs.push_back(-3.0 + 0.625 * j);
  const auto cells = mode_map(alphas, rs, 1e-3);
  int not_unimodal = 0;
  for (const MapCell& c : cells) {
    EXPECT_TRUE(c.status.empty()) << c.alpha << " " << c.r << ": " << c.status;
    if (c.profile.verdict == Verdict::kNotUnimodal) {
      ++not_unimodal;
      EXPECT_GT(c.alpha, 0.5);
    }
    if (c.r == 1.0) {
      EXPECT_EQ(c.profile.verdict, Verdict::kUnimodalNonmonotone);
    }
    if (std::abs(c.alpha - 0.3) < 1e-12) {
      EXPECT_NE(c.profile.verdict, Verdict::kNotUnimodal);
    }
    if (c.profile.verdict == Verdict::kMonotone) {
      EXPECT_EQ(c.profile.interior_maxima, 0);
    }
  }
  EXPECT_GT(not_unimodal, 0);
}

TEST(ModeMap, RowAtOne) {
  const auto cells = mode_map({0.2, 0.5, 0.8}, {1.0}, 1e-3);
  for (const MapCell& c : cells) {
    EXPECT_EQ(c.profile.verdict, Verdict::kUnimodalNonmonotone) << c.alpha;
  }
}

}  // namespace
}  // namespace stablemodes
