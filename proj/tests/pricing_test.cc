// Copyright 2026 The Richslate Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "richslate/pricing.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "richslate/curves.h"

namespace richslate {
namespace {

AllocationCurve MakeCurve(std::vector<double> taus, std::vector<double> allocs) {
  AllocationCurve c;
  c.taus = std::move(taus);
  c.allocs = std::move(allocs);
  return c;
}

AllocationCurve RandomCurve(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> steps(1, 8);
  std::uniform_real_distribution<double> gap(0.01, 2.0);
  std::uniform_real_distribution<double> inc(0.01, 0.3);
  AllocationCurve c;
  const int n = steps(rng);
  for (int j = 0; j < n; ++j) {
    c.taus.push_back(c.taus.back() + gap(rng));
    c.allocs.push_back(c.allocs.back() + inc(rng));
  }
  return c;
}

// (1 / x_j) * integral over [0, tau_j] of (x_j - x(t)) dt, midpoint rule.
double VcgByQuadrature(const AllocationCurve& c, double bid) {
  const int j = SegmentOf(c, bid);
  const double xj = c.allocs[j];
  const double top = c.taus[j];
  const int n = 200000;
  const double dt = top / n;
  double area = 0.0;
  for (int s = 0; s < n; ++s) area += (xj - c.Evaluate((s + 0.5) * dt)) * dt;
  return area / xj;
}

double HybridDirect(const AllocationCurve& c, double bid, double alpha) {
  const int j = SegmentOf(c, bid);
  double sum = 0.0;
  for (int m = 1; m <= j; ++m) {
    sum += std::pow(c.taus[m] * c.allocs[m], alpha + 1) -
           std::pow(c.taus[m] * c.allocs[m - 1], alpha + 1);
  }
  return std::pow(sum, 1.0 / (alpha + 1)) / c.allocs[j];
}

TEST(ParseSchemeTest, KnownNames) {
  EXPECT_EQ(ParseScheme("first"), Scheme::kFirst);
  EXPECT_EQ(ParseScheme("gsp"), Scheme::kGsp);
  EXPECT_EQ(ParseScheme("vcg"), Scheme::kVcg);
  EXPECT_EQ(ParseScheme("roi"), Scheme::kRoi);
  EXPECT_EQ(ParseScheme("alpha"), Scheme::kAlphaHybrid);
  EXPECT_EQ(ParseScheme("alpha_hybrid"), Scheme::kAlphaHybrid);
  EXPECT_THROW(ParseScheme("english"), ConfigError);
  for (Scheme s : {Scheme::kFirst, Scheme::kGsp, Scheme::kVcg, Scheme::kRoi,
                   Scheme::kAlphaHybrid}) {
    EXPECT_EQ(ParseScheme(SchemeName(s)), s);
  }
}

TEST(SegmentOfTest, Examples) {
  const AllocationCurve c = MakeCurve({0, 1, 3}, {0, 0.5, 1});
  EXPECT_EQ(SegmentOf(c, 0.5), 0);
  EXPECT_EQ(SegmentOf(c, 1.0), 1);
  EXPECT_EQ(SegmentOf(c, 10.0), 2);
  EXPECT_EQ(SegmentOf(c, 0.0), 0);
}

TEST(PriceFirstTest, ChargesBid) { EXPECT_EQ(PriceFirst(2.5), 2.5); }

TEST(PriceGspTest, Examples) {
  const AllocationCurve c = MakeCurve({0, 1, 3}, {0, 0.5, 1});
  EXPECT_DOUBLE_EQ(PriceGsp(c, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(PriceGsp(c, 3.0), 3.0);
}

TEST(PriceVcgTest, TwoSteps) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  EXPECT_NEAR(PriceVcg(c, 5.0), 1.5, 1e-12);
  EXPECT_NEAR(PriceVcg(c, 1.5), 1.0, 1e-12);
}

TEST(PriceVcgTest, MatchesQuadrature) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 30; ++t) {
    const AllocationCurve c = RandomCurve(rng);
    const double bid = c.taus.back() + 0.5;
    EXPECT_NEAR(PriceVcg(c, bid), VcgByQuadrature(c, bid), 1e-4);
  }
}

TEST(PriceRoiTest, AlphaZeroIsVcg) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  EXPECT_NEAR(PriceRoi(c, 5.0, 0.0), 1.5, 1e-12);
  EXPECT_NEAR(PriceRoi(c, 1.5, 0.0), 1.0, 1e-12);
}

TEST(PriceRoiTest, HugeAlphaIsGsp) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  EXPECT_NEAR(PriceRoi(c, 5.0, 1e9), 2.0, 1e-12);
}

TEST(PriceRoiTest, TinyStepIsNotOvercharged) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.50, 0.51});
  EXPECT_NEAR(PriceRoi(c, 5.0, 1.0), (0.5 * 1 + 0.01 * 2 * 2) / 0.51, 1e-12);
  EXPECT_LT(PriceRoi(c, 5.0, 1.0), 0.6 * PriceGsp(c, 5.0));
}

TEST(PriceRoiTest, RejectsNegativeAlpha) {
  const AllocationCurve c = MakeCurve({0, 1}, {0, 1});
  EXPECT_THROW(PriceRoi(c, 2.0, -0.5), ConfigError);
}

TEST(PriceAlphaHybridTest, AlphaZeroIsVcg) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  EXPECT_NEAR(PriceAlphaHybrid(c, 5.0, 0.0), 1.5, 1e-12);
}

TEST(PriceAlphaHybridTest, LargeAlphaIsGsp) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  EXPECT_NEAR(PriceAlphaHybrid(c, 5.0, 1e3), 2.0, 1e-4);
  EXPECT_TRUE(std::isfinite(PriceAlphaHybrid(c, 5.0, 1e6)));
}

TEST(PriceAlphaHybridTest, SingleStepIsThreshold) {
  const AllocationCurve c = MakeCurve({0, 0.7}, {0, 0.3});
  for (double alpha : {0.0, 0.5, 1.0, 3.0, 10.0, 1e3}) {
    EXPECT_NEAR(PriceAlphaHybrid(c, 1.0, alpha), 0.7, 1e-12);
  }
}

TEST(PriceAlphaHybridTest, MatchesDirectPowerSum) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 500; ++t) {
    const AllocationCurve c = RandomCurve(rng);
    const double bid = c.taus.back();
    for (double alpha : {0.0, 0.5, 1.0, 3.0, 10.0}) {
      const double want = HybridDirect(c, bid, alpha);
      EXPECT_NEAR(PriceAlphaHybrid(c, bid, alpha), want, 1e-9 * want);
    }
  }
}

TEST(PriceAlphaHybridTest, RejectsNegativeAlpha) {
  const AllocationCurve c = MakeCurve({0, 1}, {0, 1});
  EXPECT_THROW(PriceAlphaHybrid(c, 2.0, -1.0), ConfigError);
}

TEST(SchemeOrderTest, RandomCurves) {
  std::mt19937_64 rng(53);
  const std::vector<double> alphas{0.0, 0.5, 1.0, 3.0, 10.0, 1e3};
  for (int t = 0; t < 2000; ++t) {
    const AllocationCurve c = RandomCurve(rng);
    for (int j = 1; j < c.segments(); ++j) {
      const double bid = c.taus[j];
      const double vcg = PriceVcg(c, bid);
      const double gsp = PriceGsp(c, bid);
      double prev_roi = vcg;
      double prev_hyb = vcg;
      for (double alpha : alphas) {
        const double roi = PriceRoi(c, bid, alpha);
        const double hyb = PriceAlphaHybrid(c, bid, alpha);
        EXPECT_LE(vcg, roi + 1e-9);
        EXPECT_LE(roi, gsp + 1e-9);
        EXPECT_LE(vcg, hyb + 1e-9);
        EXPECT_LE(hyb, gsp + 1e-9);
        EXPECT_GE(roi, prev_roi - 1e-9);
        EXPECT_GE(hyb, prev_hyb - 1e-9);
        prev_roi = roi;
        prev_hyb = hyb;
      }
    }
  }
}

TEST(QuoteTest, DispatchesAndRecordsSegment) {
  const AllocationCurve c = MakeCurve({0, 1, 2}, {0, 0.5, 1});
  const PriceQuote q = Quote(c, 5.0, "vcg");
  EXPECT_EQ(q.scheme, Scheme::kVcg);
  EXPECT_EQ(q.segment, 2);
  EXPECT_DOUBLE_EQ(q.clicks, 1.0);
  EXPECT_NEAR(q.per_click, 1.5, 1e-12);
  EXPECT_NEAR(Quote(c, 5.0, Scheme::kGsp).per_click, 2.0, 1e-12);
  EXPECT_NEAR(Quote(c, 5.0, Scheme::kFirst).per_click, 5.0, 1e-12);
  const PriceQuote roi = Quote(c, 5.0, Scheme::kRoi, 0.0);
  EXPECT_NEAR(roi.per_click, 1.5, 1e-12);
  EXPECT_DOUBLE_EQ(roi.alpha, 0.0);
  EXPECT_THROW(Quote(c, 5.0, "dutch"), ConfigError);
}

TEST(QuoteTest, ZeroAllocationIsFree) {
  const AllocationCurve c = MakeCurve({0, 1}, {0, 0.5});
  for (Scheme s : {Scheme::kFirst, Scheme::kGsp, Scheme::kVcg, Scheme::kRoi,
                   Scheme::kAlphaHybrid}) {
    EXPECT_EQ(Quote(c, 0.5, s).per_click, 0.0);
  }
}

TEST(QuoteTest, ClampsToBid) {
  // A curve whose first step sits above the bid is not reachable by a solver,
  // but the clamp still holds.
  const AllocationCurve c = MakeCurve({0, 1}, {0.2, 0.5});
  const PriceQuote q = Quote(c, 0.4, Scheme::kGsp);
  EXPECT_GE(q.per_click, 0.0);
  EXPECT_LE(q.per_click, 0.4);
  const AllocationCurve tie = MakeCurve({0, 3}, {0, 0.5});
  EXPECT_LE(Quote(tie, 3.0, Scheme::kGsp).per_click, 3.0);
}

}  // namespace
}  // namespace richslate
