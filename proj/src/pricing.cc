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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "richslate/core.h"

namespace richslate {

Scheme ParseScheme(std::string_view name) {
  if (name == "first") return Scheme::kFirst;
  if (name == "gsp") return Scheme::kGsp;
  if (name == "vcg") return Scheme::kVcg;
  if (name == "roi") return Scheme::kRoi;
  if (name == "alpha" || name == "alpha_hybrid") return Scheme::kAlphaHybrid;
  throw ConfigError("unknown pricing scheme '" + std::string(name) + "'");
}

std::string SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kFirst:
      return "first";
    case Scheme::kGsp:
      return "gsp";
    case Scheme::kVcg:
      return "vcg";
    case Scheme::kRoi:
      return "roi";
    case Scheme::kAlphaHybrid:
      return "alpha_hybrid";
  }
  return "unknown";
}

int SegmentOf(const AllocationCurve& curve, double bid) {
  auto it = std::upper_bound(curve.taus.begin(), curve.taus.end(), bid);
  if (it == curve.taus.begin()) return 0;
  return static_cast<int>(std::distance(curve.taus.begin(), it)) - 1;
}

double PriceFirst(double bid) { return bid; }

double PriceGsp(const AllocationCurve& curve, double bid) {
  const int j = SegmentOf(curve, bid);
  if (!(curve.allocs[j] > 0.0)) return 0.0;
  return curve.taus[j];
}

double PriceVcg(const AllocationCurve& curve, double bid) {
  const int j = SegmentOf(curve, bid);
  if (!(curve.allocs[j] > 0.0)) return 0.0;
  double area = 0.0;
  for (int m = 1; m <= j; ++m) {
    area += curve.taus[m] * (curve.allocs[m] - curve.allocs[m - 1]);
  }
  return area / curve.allocs[j];
}

double PriceRoi(const AllocationCurve& curve, double bid, double alpha) {
  if (alpha < 0.0) throw ConfigError("alpha must be nonnegative");
  const int j = SegmentOf(curve, bid);
  if (!(curve.allocs[j] > 0.0)) return 0.0;
  double price = 0.0;
  for (int m = 1; m <= j; ++m) {
    const double prev = curve.allocs[m - 1];
    const double cur = curve.allocs[m];
    if (!(cur > 0.0)) {
      price = 0.0;
      continue;
    }
    const double marginal =
        (prev * price + (cur - prev) * (alpha + 1.0) * curve.taus[m]) / cur;
    price = std::min(curve.taus[m], marginal);
  }
  return price;
}

double PriceAlphaHybrid(const AllocationCurve& curve, double bid,
                        double alpha) {
  if (alpha < 0.0) throw ConfigError("alpha must be nonnegative");
  const int j = SegmentOf(curve, bid);
  if (!(curve.allocs[j] > 0.0)) return 0.0;
  const double power = alpha + 1.0;
  // log of (tau x_m)^power - (tau x_{m-1})^power, summed in log space.
  std::vector<double> logs;
  logs.reserve(j);
  for (int m = 1; m <= j; ++m) {
    const double tau = curve.taus[m];
    const double cur = curve.allocs[m];
    const double prev = curve.allocs[m - 1];
    if (!(tau > 0.0) || !(cur > prev)) continue;
    const double ratio = std::pow(prev / cur, power);
    logs.push_back(power * (std::log(tau) + std::log(cur)) + std::log1p(-ratio));
  }
  if (logs.empty()) return 0.0;
  const double top = *std::max_element(logs.begin(), logs.end());
  double scaled = 0.0;
  for (double v : logs) scaled += std::exp(v - top);
  const double log_sum = top + std::log(scaled);
  return std::exp(log_sum / power) / curve.allocs[j];
}

PriceQuote Quote(const AllocationCurve& curve, double bid, Scheme scheme,
                 double alpha) {
  PriceQuote quote;
  quote.scheme = scheme;
  quote.alpha = (scheme == Scheme::kRoi || scheme == Scheme::kAlphaHybrid)
                    ? alpha
                    : 0.0;
  quote.segment = SegmentOf(curve, bid);
  quote.clicks = curve.allocs[quote.segment];
  double price = 0.0;
  if (quote.clicks > 0.0) {
    switch (scheme) {
      case Scheme::kFirst:
        price = PriceFirst(bid);
        break;
      case Scheme::kGsp:
        price = PriceGsp(curve, bid);
        break;
      case Scheme::kVcg:
        price = PriceVcg(curve, bid);
        break;
      case Scheme::kRoi:
        price = PriceRoi(curve, bid, alpha);
        break;
      case Scheme::kAlphaHybrid:
        price = PriceAlphaHybrid(curve, bid, alpha);
        break;
    }
  }
  quote.per_click = std::clamp(price, 0.0, std::max(bid, 0.0));
  return quote;
}

PriceQuote Quote(const AllocationCurve& curve, double bid,
                 std::string_view scheme, double alpha) {
  return Quote(curve, bid, ParseScheme(scheme), alpha);
}

}  // namespace richslate
