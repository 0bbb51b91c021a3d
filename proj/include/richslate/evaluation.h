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

#ifndef RICHSLATE_EVALUATION_H_
#define RICHSLATE_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "richslate/allocator.h"
#include "richslate/core.h"
#include "richslate/oracle.h"
#include "richslate/pricing.h"

namespace richslate {

// Denominator floor for relative price error.
inline constexpr double kPriceErrorFloor = 1e-6;

struct EvalOptions {
  int threads = 1;
  SolveOptions solve;
  ExactOptions exact;
  ExactCurveOptions curve;
};

struct AllocationStats {
  int instances = 0;
  int skipped = 0;
  double efficiency_rate = 1.0;
  double optimality_rate = 1.0;
  double min_ratio = 1.0;
  // Instances where the heuristic beat the oracle; must stay zero.
  int dominance_violations = 0;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  int64_t count = 0;
};

struct CdfPoint {
  double error = 0.0;
  double fraction = 0.0;
};

struct PriceComparison {
  int instance = 0;
  std::string advertiser;
  double bid = 0.0;
  double approx = 0.0;
  double exact = 0.0;
  double relative_error = 0.0;
};

struct PriceAccuracy {
  Scheme scheme = Scheme::kGsp;
  double alpha = 0.0;
  int64_t quotes = 0;
  int skipped = 0;
  // Quotes with a zero exact price and a nonzero approximate one.
  int64_t unbounded = 0;
  std::vector<HistogramBin> ratio_hist;
  int64_t ratio_overflow = 0;
  std::vector<CdfPoint> err_cdf;
  std::vector<PriceComparison> comparisons;

  double FractionWithin(double relative_error) const;
};

struct TimingStats {
  double p50 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
};

struct EvalReport {
  std::map<int, AllocationStats> allocation;  // keyed by adlim
  std::optional<PriceAccuracy> pricing;
  TimingStats timing_ms;
};

// Runs fn(i) for i in [0, n) on `threads` workers.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

double RelativePriceError(double approx, double exact);

// Heuristic vs exhaustive optimum for each adlim.
EvalReport EvalAllocation(std::span<const AuctionInstance> corpus,
                          std::span<const int> adlims,
                          const EvalOptions& options = {});

// Heuristic-curve prices vs bisection-curve prices for every advertiser the
// heuristic shows.
EvalReport EvalPrices(std::span<const AuctionInstance> corpus, Scheme scheme,
                      double alpha, const EvalOptions& options = {});

// Timing is nondeterministic, so it is emitted only on request.
nlohmann::json ReportToJson(const EvalReport& report, bool include_timing);
std::string ReportToCsv(const EvalReport& report, bool include_timing);

}  // namespace richslate

#endif  // RICHSLATE_EVALUATION_H_
