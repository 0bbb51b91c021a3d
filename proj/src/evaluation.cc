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

#include "richslate/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "richslate/curves.h"

namespace richslate {
namespace {

using nlohmann::json;

constexpr double kHistogramMax = 2.0;
constexpr int kHistogramBins = 100;
constexpr double kCdfPoints[] = {0.0,  0.001, 0.005, 0.01, 0.02, 0.05,
                                 0.1,  0.15,  0.2,   0.3,  0.5,  1.0};

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

TimingStats Summarize(const std::vector<double>& ms) {
  return {Percentile(ms, 0.50), Percentile(ms, 0.95), Percentile(ms, 0.99)};
}

bool Tractable(const AuctionInstance& inst, const EvalOptions& options) {
  return inst.num_candidates() <= options.exact.max_candidates;
}

}  // namespace

double PriceAccuracy::FractionWithin(double relative_error) const {
  if (comparisons.empty()) return 1.0;
  int64_t hits = 0;
  for (const PriceComparison& c : comparisons) {
    if (c.relative_error <= relative_error) ++hits;
  }
  return static_cast<double>(hits) / comparisons.size();
}

void ParallelFor(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  const int width = std::min(threads, n);
  workers.reserve(width);
  for (int w = 0; w < width; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

double RelativePriceError(double approx, double exact) {
  return std::abs(approx - exact) / std::max(exact, kPriceErrorFloor);
}

EvalReport EvalAllocation(std::span<const AuctionInstance> corpus,
                          std::span<const int> adlims,
                          const EvalOptions& options) {
  struct Outcome {
    bool skipped = false;
    double heuristic = 0.0;
    double optimum = 0.0;
    double elapsed_ms = 0.0;
  };
  EvalReport report;
  std::vector<double> timings;
  const int n = static_cast<int>(corpus.size());
  for (int adlim : adlims) {
    if (adlim < 1) throw ConfigError("adlim must be >= 1");
    std::vector<Outcome> outcomes(n);
    ParallelFor(n, options.threads, [&](int i) {
      if (!Tractable(corpus[i], options)) {
        outcomes[i].skipped = true;
        return;
      }
      const AuctionInstance inst = corpus[i].WithAdlim(adlim);
      const SolveResult solved = Solve(inst, options.solve);
      outcomes[i].heuristic = solved.best.objective();
      outcomes[i].elapsed_ms = solved.stats.elapsed_ms;
      outcomes[i].optimum = ExactSolve(inst, options.exact).objective();
    });

    AllocationStats stats;
    double ratio_sum = 0.0;
    int optimal = 0;
    for (const Outcome& o : outcomes) {
      if (o.skipped) {
        ++stats.skipped;
        continue;
      }
      ++stats.instances;
      timings.push_back(o.elapsed_ms);
      if (o.heuristic > o.optimum + kTolerance) ++stats.dominance_violations;
      const double ratio =
          o.optimum > kTolerance ? o.heuristic / o.optimum
                                 : (o.heuristic >= o.optimum - kTolerance ? 1.0 : 0.0);
      ratio_sum += ratio;
      stats.min_ratio = std::min(stats.min_ratio, ratio);
      if (ratio >= 1.0 - kTolerance) ++optimal;
    }
    if (stats.instances > 0) {
      stats.efficiency_rate = ratio_sum / stats.instances;
      stats.optimality_rate = static_cast<double>(optimal) / stats.instances;
    }
    report.allocation[adlim] = stats;
  }
  report.timing_ms = Summarize(timings);
  return report;
}

EvalReport EvalPrices(std::span<const AuctionInstance> corpus, Scheme scheme,
                      double alpha, const EvalOptions& options) {
  struct Outcome {
    bool skipped = false;
    double elapsed_ms = 0.0;
    std::vector<PriceComparison> rows;
  };
  const int n = static_cast<int>(corpus.size());
  std::vector<Outcome> outcomes(n);
  ParallelFor(n, options.threads, [&](int i) {
    const AuctionInstance& inst = corpus[i];
    if (!Tractable(inst, options)) {
      outcomes[i].skipped = true;
      return;
    }
    const SolveResult solved = Solve(inst, options.solve);
    outcomes[i].elapsed_ms = solved.stats.elapsed_ms;
    ExactCurveOptions curve_options = options.curve;
    curve_options.exact = options.exact;
    for (const PlacedAd& ad : solved.best.ads()) {
      if (!(ad.clicks > 0.0)) continue;
      const double bid = inst.advertiser_bid(ad.advertiser);
      const AllocationCurve approx_curve = CurveFor(solved, inst, ad.advertiser);
      const AllocationCurve exact_curve =
          ExactCurve(inst, ad.advertiser, curve_options);
      PriceComparison row;
      row.instance = i;
      row.advertiser = inst.advertiser_id(ad.advertiser);
      row.bid = bid;
      row.approx = Quote(approx_curve, bid, scheme, alpha).per_click;
      row.exact = Quote(exact_curve, bid, scheme, alpha).per_click;
      row.relative_error = RelativePriceError(row.approx, row.exact);
      outcomes[i].rows.push_back(std::move(row));
    }
  });

  PriceAccuracy acc;
  acc.scheme = scheme;
  acc.alpha = (scheme == Scheme::kRoi || scheme == Scheme::kAlphaHybrid) ? alpha : 0.0;
  const double width = kHistogramMax / kHistogramBins;
  for (int b = 0; b < kHistogramBins; ++b) {
    acc.ratio_hist.push_back({b * width, (b + 1) * width, 0});
  }
  std::vector<double> timings;
  for (Outcome& o : outcomes) {
    if (o.skipped) {
      ++acc.skipped;
      continue;
    }
    timings.push_back(o.elapsed_ms);
    for (PriceComparison& row : o.rows) {
      ++acc.quotes;
      if (row.exact <= 0.0) {
        if (row.approx > 0.0) {
          ++acc.unbounded;
        } else {
          acc.ratio_hist[static_cast<int>(1.0 / width)].count++;
        }
      } else {
        const double ratio = row.approx / row.exact;
        if (ratio >= kHistogramMax) {
          ++acc.ratio_overflow;
        } else {
          acc.ratio_hist[std::clamp(static_cast<int>(ratio / width), 0,
                                    kHistogramBins - 1)]
              .count++;
        }
      }
      acc.comparisons.push_back(std::move(row));
    }
  }
  for (double t : kCdfPoints) acc.err_cdf.push_back({t, acc.FractionWithin(t)});

  EvalReport report;
  report.pricing = std::move(acc);
  report.timing_ms = Summarize(timings);
  return report;
}

json ReportToJson(const EvalReport& report, bool include_timing) {
  json out = json::object();
  json allocation = json::object();
  for (const auto& [adlim, s] : report.allocation) {
    allocation[std::to_string(adlim)] = {
        {"efficiency_rate", s.efficiency_rate},
        {"optimality_rate", s.optimality_rate},
        {"instances", s.instances},
        {"skipped", s.skipped},
        {"min_ratio", s.min_ratio},
        {"dominance_violations", s.dominance_violations}};
  }
  out["allocation"] = std::move(allocation);
  json pricing = json::object();
  if (report.pricing) {
    const PriceAccuracy& p = *report.pricing;
    json hist = json::array();
    for (const HistogramBin& b : p.ratio_hist) {
      hist.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
    }
    json cdf = json::array();
    for (const CdfPoint& c : p.err_cdf) {
      cdf.push_back({{"err", c.error}, {"fraction", c.fraction}});
    }
    pricing = {{"scheme", SchemeName(p.scheme)},
               {"alpha", p.alpha},
               {"quotes", p.quotes},
               {"skipped", p.skipped},
               {"unbounded", p.unbounded},
               {"ratio_overflow", p.ratio_overflow},
               {"ratio_hist", std::move(hist)},
               {"err_cdf", std::move(cdf)}};
  }
  out["pricing"] = std::move(pricing);
  if (include_timing) {
    out["timing_ms"] = {{"p50", report.timing_ms.p50},
                        {"p95", report.timing_ms.p95},
                        {"p99", report.timing_ms.p99}};
  }
  return out;
}

std::string ReportToCsv(const EvalReport& report, bool include_timing) {
  std::ostringstream out;
  out.precision(17);
  out << "section,key,value_a,value_b,value_c\n";
  for (const auto& [adlim, s] : report.allocation) {
    out << "allocation," << adlim << ',' << s.efficiency_rate << ','
        << s.optimality_rate << ',' << s.instances << '\n';
  }
  if (report.pricing) {
    for (const HistogramBin& b : report.pricing->ratio_hist) {
      out << "ratio_hist," << b.lo << ',' << b.hi << ',' << b.count << ",\n";
    }
    for (const CdfPoint& c : report.pricing->err_cdf) {
      out << "err_cdf," << c.error << ',' << c.fraction << ",,\n";
    }
  }
  if (include_timing) {
    out << "timing_ms,percentiles," << report.timing_ms.p50 << ','
        << report.timing_ms.p95 << ',' << report.timing_ms.p99 << '\n';
  }
  return out.str();
}

}  // namespace richslate
