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

#ifndef RICHSLATE_PRICING_H_
#define RICHSLATE_PRICING_H_

#include <string>
#include <string_view>

#include "richslate/curves.h"

namespace richslate {

enum class Scheme { kFirst, kGsp, kVcg, kRoi, kAlphaHybrid };

// Hybrid-scheme parameter when none is given.
inline constexpr double kDefaultAlpha = 3.0;

// Accepts first, gsp, vcg, roi, alpha (or alpha_hybrid). Throws ConfigError.
Scheme ParseScheme(std::string_view name);
std::string SchemeName(Scheme scheme);

struct PriceQuote {
  Scheme scheme = Scheme::kGsp;
  double alpha = 0.0;
  double per_click = 0.0;
  int segment = 0;
  double clicks = 0.0;
};

// Largest j with taus[j] <= bid.
int SegmentOf(const AllocationCurve& curve, double bid);

double PriceFirst(double bid);
// Minimum bid that keeps the current allocation.
double PriceGsp(const AllocationCurve& curve, double bid);
// Area above the allocation curve up to the bid, per click.
double PriceVcg(const AllocationCurve& curve, double bid);
// ROI-constrained price: GSP capped by a marginal cost per click of
// (alpha + 1) * tau for each extra increment of allocation.
double PriceRoi(const AllocationCurve& curve, double bid, double alpha);
// Price truthful for utilities v^(alpha+1) - p^(alpha+1).
double PriceAlphaHybrid(const AllocationCurve& curve, double bid, double alpha);

// Dispatches on `scheme` and clamps the price to [0, bid]. Segments with zero
// allocation are priced at 0 for every scheme.
PriceQuote Quote(const AllocationCurve& curve, double bid, Scheme scheme,
                 double alpha = kDefaultAlpha);
PriceQuote Quote(const AllocationCurve& curve, double bid,
                 std::string_view scheme, double alpha = kDefaultAlpha);

}  // namespace richslate

#endif  // RICHSLATE_PRICING_H_
