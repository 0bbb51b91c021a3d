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

#ifndef RICHSLATE_CURVES_H_
#define RICHSLATE_CURVES_H_

#include <span>
#include <string_view>
#include <vector>

#include "richslate/allocator.h"
#include "richslate/core.h"

namespace richslate {

// Slates whose click probabilities differ by less than this share a slope.
inline constexpr double kSlopeTolerance = 1e-12;

// OBJ(C) as a function of one bidder's bid: intercept + slope * bid.
struct ObjectiveLine {
  double slope = 0.0;      // x_i(C)
  double intercept = 0.0;  // z_{i,C}

  double At(double bid) const { return intercept + slope * bid; }
};

// Stepped allocation curve: allocs[j] applies for taus[j] <= bid <
// taus[j + 1]. taus[0] is always 0.
struct AllocationCurve {
  std::vector<double> taus{0.0};
  std::vector<double> allocs{0.0};

  static AllocationCurve Zero() { return {}; }

  int segments() const { return static_cast<int>(taus.size()); }
  double Evaluate(double bid) const;
};

// One line per logged slate for `advertiser`.
std::vector<ObjectiveLine> LinesFor(const SearchLog& log,
                                    const AuctionInstance& inst,
                                    int advertiser);

// Convex upper envelope of `lines` over bids >= 0. Slopes become allocations,
// inflection points become thresholds.
AllocationCurve UpperEnvelope(std::span<const ObjectiveLine> lines);

// Envelope of the logged slates for one advertiser.
AllocationCurve CurveFromLog(const SearchLog& log, const AuctionInstance& inst,
                             int advertiser);

// Curves for every advertiser of the instance from one pass over the log.
std::vector<AllocationCurve> CurvesFromLog(const SearchLog& log,
                                           const AuctionInstance& inst);

// Curve of a solved instance. Checks that the curve reproduces the solver's
// allocation at the advertiser's actual bid and throws InternalError if not.
AllocationCurve CurveFor(const SolveResult& result, const AuctionInstance& inst,
                         int advertiser);
// Unknown advertisers get the constant-zero curve.
AllocationCurve CurveFor(const SolveResult& result, const AuctionInstance& inst,
                         std::string_view advertiser);

// Drops segments narrower than `eps`, merging each into its successor.
AllocationCurve Canonicalize(const AllocationCurve& curve, double eps);

// True when both curves, restricted to bids in [0, upto], have the same
// steps: breakpoints within `eps` and allocations within `alloc_tol`.
bool CurvesMatch(const AllocationCurve& a, const AllocationCurve& b, double eps,
                 double upto, double alloc_tol = 1e-9);

}  // namespace richslate

#endif  // RICHSLATE_CURVES_H_
