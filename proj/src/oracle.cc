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

#include "richslate/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace richslate {
namespace {

void CheckSize(const AuctionInstance& inst, const ExactOptions& options) {
  if (inst.num_candidates() > options.max_candidates) {
    throw InstanceTooLargeError(
        "exact solver refuses " + std::to_string(inst.num_candidates()) +
        " candidates (limit " + std::to_string(options.max_candidates) + ")");
  }
}

// Depth-first search over ordered stacks. Each node is itself a complete
// slate; children append one more ad at the bottom.
class StackSearch {
 public:
  explicit StackSearch(const AuctionInstance& inst)
      : inst_(inst),
        used_(inst.num_advertisers(), 0),
        order_by_rank_(RankCandidates(inst)) {
    const int n = inst.num_candidates();
    const int lines = inst.lines();
    // best_from_[c][k]: best nonnegative value of c over starts >= k.
    best_from_.assign(static_cast<size_t>(n) * (lines + 1), 0.0);
    for (int c = 0; c < n; ++c) {
      const int h = inst.candidate(c).height;
      double best = 0.0;
      for (int k = lines; k >= 0; --k) {
        if (k + h <= lines) best = std::max(best, inst.net_value(c, k));
        best_from_[Cell(c, k)] = best;
      }
    }
  }

  void Enumerate(
      const std::function<void(std::span<const int>, double)>& visit) {
    stack_.clear();
    EnumerateFrom(0, 0.0, visit);
  }

  Slate Maximize() {
    stack_.clear();
    best_order_.clear();
    best_objective_ = 0.0;
    best_lines_ = 0;
    MaximizeFrom(0, 0.0);
    return Slate::Stack(inst_, best_order_);
  }

 private:
  size_t Cell(int c, int k) const {
    return static_cast<size_t>(c) * (inst_.lines() + 1) + k;
  }

  void EnumerateFrom(
      int line, double value,
      const std::function<void(std::span<const int>, double)>& visit) {
    visit(stack_, value);
    if (static_cast<int>(stack_.size()) >= inst_.adlim()) return;
    for (int c : order_by_rank_) {
      const int a = inst_.advertiser_of(c);
      const int h = inst_.candidate(c).height;
      if (used_[a] || line + h > inst_.lines()) continue;
      used_[a] = 1;
      stack_.push_back(c);
      EnumerateFrom(line + h, value + inst_.net_value(c, line), visit);
      stack_.pop_back();
      used_[a] = 0;
    }
  }

  // Optimistic gain from filling the remaining slots and lines.
  double Bound(int line) const {
    const int slots = inst_.adlim() - static_cast<int>(stack_.size());
    const int remaining = inst_.lines() - line;
    top_.clear();
    double best_rate = 0.0;
    for (int a = 0; a < inst_.num_advertisers(); ++a) {
      if (used_[a]) continue;
      double best = 0.0;
      for (int c : inst_.candidates_of(a)) {
        const int h = inst_.candidate(c).height;
        if (h > remaining) continue;
        const double v = best_from_[Cell(c, line)];
        best = std::max(best, v);
        best_rate = std::max(best_rate, v / h);
      }
      if (best > 0.0) top_.push_back(best);
    }
    const size_t take = std::min<size_t>(slots, top_.size());
    std::partial_sort(top_.begin(), top_.begin() + take, top_.end(),
                      std::greater<>());
    double by_slots = 0.0;
    for (size_t j = 0; j < take; ++j) by_slots += top_[j];
    return std::min(by_slots, best_rate * remaining);
  }

  void MaximizeFrom(int line, double value) {
    const int size = static_cast<int>(stack_.size());
    if (Preferred(value, size, line, best_objective_,
                  static_cast<int>(best_order_.size()), best_lines_)) {
      best_objective_ = value;
      best_order_ = stack_;
      best_lines_ = line;
    }
    if (size >= inst_.adlim() || line >= inst_.lines()) return;
    if (value + Bound(line) < best_objective_ - kTolerance) return;
    for (int c : order_by_rank_) {
      const int a = inst_.advertiser_of(c);
      const int h = inst_.candidate(c).height;
      if (used_[a] || line + h > inst_.lines()) continue;
      used_[a] = 1;
      stack_.push_back(c);
      MaximizeFrom(line + h, value + inst_.net_value(c, line));
      stack_.pop_back();
      used_[a] = 0;
    }
  }

  const AuctionInstance& inst_;
  std::vector<char> used_;
  std::vector<int> order_by_rank_;
  std::vector<double> best_from_;
  std::vector<int> stack_;
  mutable std::vector<double> top_;

  std::vector<int> best_order_;
  double best_objective_ = 0.0;
  int best_lines_ = 0;
};

double AllocationAt(const AuctionInstance& inst, int advertiser, double bid,
                    const ExactOptions& options) {
  return ExactSolve(inst.WithBid(advertiser, bid), options).clicks(advertiser);
}

class Bisector {
 public:
  Bisector(const AuctionInstance& inst, int advertiser, double eps,
           const ExactOptions& options, ExactCurveResult& out)
      : inst_(inst),
        advertiser_(advertiser),
        eps_(eps),
        options_(options),
        out_(out) {}

  double Probe(double bid) {
    ++out_.solves;
    return AllocationAt(inst_, advertiser_, bid, options_);
  }

  void Refine(double lo, double x_lo, double hi, double x_hi) {
    if (std::abs(x_hi - x_lo) <= kSlopeTolerance) return;
    if (hi - lo <= eps_) {
      out_.curve.taus.push_back(0.5 * (lo + hi));
      out_.curve.allocs.push_back(x_hi);
      return;
    }
    const double mid = 0.5 * (lo + hi);
    const double x_mid = Probe(mid);
    if (x_mid < x_lo - kSlopeTolerance || x_mid > x_hi + kSlopeTolerance) {
      ++out_.monotonicity_violations;
    }
    Refine(lo, x_lo, mid, x_mid);
    Refine(mid, x_mid, hi, x_hi);
  }

 private:
  const AuctionInstance& inst_;
  int advertiser_;
  double eps_;
  const ExactOptions& options_;
  ExactCurveResult& out_;
};

}  // namespace

Slate ExactSolve(const AuctionInstance& inst, const ExactOptions& options) {
  CheckSize(inst, options);
  StackSearch search(inst);
  return search.Maximize();
}

void EnumerateSlates(
    const AuctionInstance& inst,
    const std::function<void(std::span<const int>, double)>& visit,
    const ExactOptions& options) {
  CheckSize(inst, options);
  StackSearch search(inst);
  search.Enumerate(visit);
}

SearchLog LogAllSlates(const AuctionInstance& inst,
                       const ExactOptions& options) {
  SearchLog log;
  EnumerateSlates(
      inst,
      [&](std::span<const int> order, double objective) {
        log.Record(inst, order, objective);
      },
      options);
  return log;
}

ExactCurveResult ExactCurveDetailed(const AuctionInstance& inst, int advertiser,
                                    const ExactCurveOptions& options) {
  CheckSize(inst, options.exact);
  ExactCurveResult out;
  double max_bid = 0.0;
  for (const AdCandidate& ad : inst.candidates()) max_bid = std::max(max_bid, ad.bid);
  out.bid_hi = options.bid_hi.value_or(10.0 * max_bid);
  if (out.bid_hi <= 0.0) out.bid_hi = 1.0;
  out.eps_bid = options.eps_bid.value_or(1e-6 * out.bid_hi);
  if (advertiser < 0 || advertiser >= inst.num_advertisers()) {
    out.curve = AllocationCurve::Zero();
    return out;
  }
  Bisector bisector(inst, advertiser, out.eps_bid, options.exact, out);
  const double x_lo = bisector.Probe(0.0);
  const double x_hi = bisector.Probe(out.bid_hi);
  if (x_hi < x_lo - kSlopeTolerance) ++out.monotonicity_violations;
  out.curve.taus = {0.0};
  out.curve.allocs = {x_lo};
  bisector.Refine(0.0, x_lo, out.bid_hi, x_hi);
  return out;
}

AllocationCurve ExactCurve(const AuctionInstance& inst, int advertiser,
                           const ExactCurveOptions& options) {
  return ExactCurveDetailed(inst, advertiser, options).curve;
}

double VcgExternality(const AuctionInstance& inst, int advertiser,
                      const ExactOptions& options) {
  const Slate optimal = ExactSolve(inst, options);
  const double clicks = optimal.clicks(advertiser);
  if (!(clicks > 0.0)) {
    throw UndefinedPriceError("advertiser wins no clicks in the optimal slate");
  }
  const double intercept =
      optimal.objective() - clicks * inst.advertiser_bid(advertiser);
  const double without =
      ExactSolve(inst.WithoutAdvertiser(advertiser), options).objective();
  return (without - intercept) / clicks;
}

}  // namespace richslate
