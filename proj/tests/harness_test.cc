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

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "richslate/corpus.h"
#include "richslate/evaluation.h"
#include "richslate/generator.h"
#include "richslate/oracle.h"
#include "test_util.h"

namespace richslate {
namespace {

using testing::Ad;
using testing::FlatPage;

TEST(GeneratorTest, EmptyCorpus) {
  GenConfig cfg;
  cfg.n_instances = 0;
  EXPECT_TRUE(Generate(cfg).empty());
}

TEST(GeneratorTest, SameSeedSameBytes) {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.n_instances = 50;
  EXPECT_EQ(FormatCorpus(Generate(cfg)), FormatCorpus(Generate(cfg)));
  GenConfig other = cfg;
  other.seed = 10;
  EXPECT_NE(FormatCorpus(Generate(cfg)), FormatCorpus(Generate(other)));
}

TEST(GeneratorTest, MeanCandidateCount) {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.n_instances = 100;
  const std::vector<AuctionInstance> corpus = Generate(cfg);
  ASSERT_EQ(corpus.size(), 100u);
  double sum = 0.0;
  for (const AuctionInstance& inst : corpus) {
    EXPECT_GE(inst.num_candidates(), 5);
    EXPECT_LE(inst.num_candidates(), 15);
    sum += inst.num_candidates();
  }
  // Uniform on 5..15: mean 10, variance (11^2 - 1) / 12 = 10.
  const double se = std::sqrt(10.0 / 100.0);
  EXPECT_NEAR(sum / 100.0, 10.0, 4 * se);
}

TEST(GeneratorTest, InstancesAreWellFormed) {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.n_instances = 200;
  for (const AuctionInstance& inst : Generate(cfg)) {
    EXPECT_EQ(inst.page().lines, 18);
    EXPECT_EQ(inst.page().adlim, 5);
    for (int a = 0; a < inst.num_advertisers(); ++a) {
      std::vector<int> heights;
      for (int c : inst.candidates_of(a)) {
        const AdCandidate& ad = inst.candidate(c);
        EXPECT_GE(ad.height, 3);
        EXPECT_LE(ad.height, 8);
        EXPECT_GT(ad.bid, 0.0);
        EXPECT_DOUBLE_EQ(ad.bid, inst.advertiser_bid(a));
        heights.push_back(ad.height);
      }
      std::sort(heights.begin(), heights.end());
      EXPECT_EQ(std::adjacent_find(heights.begin(), heights.end()),
                heights.end());
      EXPECT_LE(heights.size(), 3u);
    }
  }
}

TEST(GeneratorTest, RejectsBadConfig) {
  GenConfig cfg;
  cfg.min_candidates = 10;
  cfg.max_candidates = 5;
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig();
  cfg.max_height = 20;
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig();
  cfg.loc_decay = 0.0;
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig();
  cfg.n_instances = -1;
  EXPECT_THROW(Generate(cfg), ConfigError);
}

TEST(CorpusTest, RoundTripsBothFormats) {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.n_instances = 20;
  const std::vector<AuctionInstance> corpus = Generate(cfg);
  for (CorpusFormat f : {CorpusFormat::kNdjson, CorpusFormat::kArray}) {
    const std::string text = FormatCorpus(corpus, f);
    const std::vector<AuctionInstance> back = ParseCorpus(text);
    EXPECT_EQ(FormatCorpus(back, f), text);
  }
}

TEST(CorpusTest, SingleObject) {
  const std::string text =
      testing::ReadFile(testing::FixturePath("packing_trap.json"));
  const std::vector<AuctionInstance> corpus = ParseCorpus(text);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].num_candidates(), 3);
}

TEST(CorpusTest, PerLineCostSchedule) {
  const std::string text = R"({"page": {"h": 2, "adlim": 1, "loc": [1, 1]},
    "candidates": [{"id": "a", "advertiser": "x", "height": 1, "bid": 1,
                    "density": 0.5, "cost": [0.1, 0.2]}]})";
  const AuctionInstance inst = ParseCorpus(text).at(0);
  EXPECT_DOUBLE_EQ(inst.candidate(0).cost.At(1), 0.2);
}

TEST(CorpusTest, EmptyInput) {
  EXPECT_TRUE(ParseCorpus("").empty());
  EXPECT_TRUE(ParseCorpus("  \n\n").empty());
  EXPECT_TRUE(ParseCorpus("[]").empty());
}

std::string Line(const std::string& adv_id) {
  return R"({"page": {"h": 4, "adlim": 2, "loc": [1, 1, 1, 1]}, "candidates": )"
         R"([{"id": ")" +
         adv_id + R"(", "advertiser": "x", "height": 2, "bid": 1, )"
                  R"("density": 0.2, "cost": 0}]})";
}

TEST(CorpusTest, NdjsonErrorNamesLine) {
  const std::string text = Line("a") + "\n" + Line("b") + "\n{\"page\": 3}\n";
  try {
    ParseCorpus(text);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("page"), std::string::npos);
  }
}

TEST(CorpusTest, SyntaxErrorNamesLine) {
  const std::string text = Line("a") + "\n" + Line("b") + "\n{\"page\": \n";
  try {
    ParseCorpus(text);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(CorpusTest, ArrayErrorNamesElementLine) {
  const std::string text = "[\n" + Line("a") + ",\n" + Line("b") +
                           ",\n{\"page\": {\"h\": 2, \"adlim\": 0, \"loc\": "
                           "[1, 1]}, \"candidates\": []}\n]\n";
  try {
    ParseCorpus(text);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(CorpusTest, WrongFieldTypeIsReported) {
  const std::string text =
      R"({"page": {"h": 4, "adlim": 2, "loc": [1, 1, 1, 1]}, "candidates": )"
      R"([{"id": "a", "advertiser": "x", "height": "two", "bid": 1, )"
      R"("density": 0.2, "cost": 0}]})";
  try {
    ParseCorpus(text);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("height"), std::string::npos);
  }
}

TEST(RelativePriceErrorTest, FloorsDenominator) {
  EXPECT_NEAR(RelativePriceError(1.1, 1.0), 0.1, 1e-12);
  EXPECT_NEAR(RelativePriceError(0.9, 1.0), 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(RelativePriceError(1e-6, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(RelativePriceError(0.0, 0.0), 0.0);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int threads : {1, 2, 4}) {
    std::vector<int> hits(1000, 0);
    ParallelFor(1000, threads, [&](int i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(EvalAllocationTest, OneCandidateCorpusIsPerfect) {
  const std::vector<AuctionInstance> corpus{
      AuctionInstance(FlatPage(4, 2), {Ad("a", "x", 2, 1.0, 0.2, 0.1)})};
  const std::vector<int> adlims{2};
  const EvalReport r = EvalAllocation(corpus, adlims);
  const AllocationStats& s = r.allocation.at(2);
  EXPECT_EQ(s.instances, 1);
  EXPECT_DOUBLE_EQ(s.efficiency_rate, 1.0);
  EXPECT_DOUBLE_EQ(s.optimality_rate, 1.0);
  EXPECT_EQ(s.dominance_violations, 0);
}

TEST(EvalAllocationTest, PackingTrap) {
  const std::vector<AuctionInstance> corpus{
      testing::LoadFixture("packing_trap.json")};
  const std::vector<int> adlims{2};
  const EvalReport r = EvalAllocation(corpus, adlims);
  const AllocationStats& s = r.allocation.at(2);
  EXPECT_NEAR(s.efficiency_rate, 0.75, 1e-9);
  EXPECT_NEAR(s.min_ratio, 0.75, 1e-9);
  EXPECT_DOUBLE_EQ(s.optimality_rate, 0.0);
}

TEST(EvalAllocationTest, SkipsOversizedInstances) {
  std::vector<AdCandidate> ads;
  for (int c = 0; c < 30; ++c) {
    ads.push_back(Ad("c" + std::to_string(c), "a" + std::to_string(c), 1, 1.0,
                     0.01));
  }
  const std::vector<AuctionInstance> corpus{
      AuctionInstance(FlatPage(18, 5), ads),
      testing::LoadFixture("single_bidder.json")};
  const std::vector<int> adlims{2};
  const AllocationStats s = EvalAllocation(corpus, adlims).allocation.at(2);
  EXPECT_EQ(s.instances, 1);
  EXPECT_EQ(s.skipped, 1);
}

TEST(EvalAllocationTest, ThreadCountDoesNotChangeReport) {
  const std::vector<AuctionInstance> corpus =
      testing::SmallCorpus(61, 60, 3, 10, 5);
  const std::vector<int> adlims{2, 3, 4, 5};
  EvalOptions one;
  EvalOptions four;
  four.threads = 4;
  EXPECT_EQ(ReportToJson(EvalAllocation(corpus, adlims, one), false).dump(),
            ReportToJson(EvalAllocation(corpus, adlims, four), false).dump());
}

TEST(EvalPricesTest, SingleBidderPricesMatch) {
  const std::vector<AuctionInstance> corpus{
      testing::LoadFixture("single_bidder.json")};
  for (Scheme s : {Scheme::kGsp, Scheme::kVcg, Scheme::kRoi,
                   Scheme::kAlphaHybrid}) {
    const EvalReport r = EvalPrices(corpus, s, kDefaultAlpha);
    ASSERT_TRUE(r.pricing.has_value());
    EXPECT_EQ(r.pricing->quotes, 1);
    ASSERT_EQ(r.pricing->comparisons.size(), 1u);
    EXPECT_NEAR(r.pricing->comparisons[0].approx, 0.25, 1e-12);
    EXPECT_NEAR(r.pricing->comparisons[0].exact, 0.25, 1e-5);
    EXPECT_DOUBLE_EQ(r.pricing->FractionWithin(0.05), 1.0);
  }
}

TEST(EvalPricesTest, HistogramAndCdfAreConsistent) {
  const std::vector<AuctionInstance> corpus =
      testing::SmallCorpus(62, 40, 3, 8, 3);
  const EvalReport r = EvalPrices(corpus, Scheme::kVcg, 0.0);
  const PriceAccuracy& p = *r.pricing;
  int64_t binned = p.ratio_overflow;
  for (const HistogramBin& b : p.ratio_hist) binned += b.count;
  EXPECT_EQ(binned + p.unbounded, p.quotes);
  ASSERT_FALSE(p.err_cdf.empty());
  for (size_t k = 1; k < p.err_cdf.size(); ++k) {
    EXPECT_GT(p.err_cdf[k].error, p.err_cdf[k - 1].error);
    EXPECT_GE(p.err_cdf[k].fraction, p.err_cdf[k - 1].fraction);
  }
  EXPECT_LE(p.err_cdf.back().fraction, 1.0);
}

TEST(EvalPricesTest, ThreadCountDoesNotChangeReport) {
  const std::vector<AuctionInstance> corpus =
      testing::SmallCorpus(63, 30, 3, 8, 3);
  EvalOptions four;
  four.threads = 4;
  EXPECT_EQ(ReportToJson(EvalPrices(corpus, Scheme::kGsp, 0.0), false).dump(),
            ReportToJson(EvalPrices(corpus, Scheme::kGsp, 0.0, four), false)
                .dump());
}

TEST(ReportTest, TimingOnlyOnRequest) {
  const std::vector<AuctionInstance> corpus =
      testing::SmallCorpus(64, 5, 3, 8, 3);
  const std::vector<int> adlims{3};
  const EvalReport r = EvalAllocation(corpus, adlims);
  EXPECT_FALSE(ReportToJson(r, false).contains("timing_ms"));
  EXPECT_TRUE(ReportToJson(r, true).contains("timing_ms"));
  EXPECT_EQ(ReportToCsv(r, false).find("timing"), std::string::npos);
}

}  // namespace
}  // namespace richslate
