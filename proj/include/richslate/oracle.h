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

#ifndef RICHSLATE_ORACLE_H_
#define RICHSLATE_ORACLE_H_

#include <functional>
#include <optional>
#include <span>

#include "richslate/allocator.h"
#include "richslate/core.h"
#include "richslate/curves.h"

namespace richslate {

class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

class UndefinedPriceError : public Error {
 public:
  using Error::Error;
};

struct ExactOptions {
  // Enumeration is refused above this many candidates.
  int max_candidates = 25;
};

// Optimal gap-free stack by branch and bound over ordered stacks. Ties follow
// Preferred(). Throws InstanceTooLargeError.
Slate ExactSolve(const AuctionInstance& inst, const ExactOptions& options = {});

// Calls `visit(order, objective)` for every feasible stack, the empty one
// included.
void EnumerateSlates(
    const AuctionInstance& inst,
    const std::function<void(std::span<const int>, double)>& visit,
    const ExactOptions& options = {});

// A log holding every feasible stack of the instance.
SearchLog LogAllSlates(const AuctionInstance& inst,
                       const ExactOptions& options = {});

struct ExactCurveOptions {
  // Upper end of the bid range; defaults to 10 * max bid in the instance.
  std::optional<double> bid_hi;
  // Breakpoint resolution; defaults to 1e-6 * bid_hi.
  std::optional<double> eps_bid;
  ExactOptions exact;
};

struct ExactCurveResult {
  AllocationCurve curve;
  double bid_hi = 0.0;
  double eps_bid = 0.0;
  // Bisection probes where the allocation dropped as the bid rose.
  int monotonicity_violations = 0;
  int solves = 0;
};

// True allocation curve of `advertiser` under ExactSolve, found by bisecting
// the bid range for every change in allocation.
ExactCurveResult ExactCurveDetailed(const AuctionInstance& inst, int advertiser,
                                    const ExactCurveOptions& options = {});
AllocationCurve ExactCurve(const AuctionInstance& inst, int advertiser,
                           const ExactCurveOptions& options = {});

// Externality price per click: (best welfare without the advertiser minus
// the z-intercept of the optimal slate) / clicks. Throws UndefinedPriceError
// if the advertiser wins no clicks.
double VcgExternality(const AuctionInstance& inst, int advertiser,
                      const ExactOptions& options = {});

}  // namespace richslate

#endif  // RICHSLATE_ORACLE_H_
