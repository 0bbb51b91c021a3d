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

#include "richslate/core.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <string>
#include <utility>

namespace richslate {
namespace {

std::atomic<bool> clamp_warned{false};

void WarnClamp(const AdCandidate& ad, int start, double raw) {
  if (!clamp_warned.exchange(true)) {
    std::cerr << "warning: click probability " << raw << " for candidate '"
              << ad.id << "' at line " << start
              << " exceeds 1; clamping (further warnings suppressed)\n";
  }
}

bool NonNegativeFinite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void PageConfig::Validate() const {
  if (lines < 1) throw InvalidInstanceError("page.h must be >= 1");
  if (adlim < 1) throw InvalidInstanceError("page.adlim must be >= 1");
  if (static_cast<int>(loc.size()) != lines) {
    throw InvalidInstanceError("page.loc has " + std::to_string(loc.size()) +
                               " entries, expected " + std::to_string(lines));
  }
  for (size_t l = 0; l < loc.size(); ++l) {
    if (!NonNegativeFinite(loc[l])) {
      throw InvalidInstanceError("page.loc[" + std::to_string(l) +
                                 "] must be a nonnegative number");
    }
  }
}

CostSchedule CostSchedule::Constant(double cost) {
  CostSchedule s;
  s.constant_ = cost;
  return s;
}

CostSchedule CostSchedule::PerLine(std::vector<double> costs) {
  CostSchedule s;
  s.per_line_ = std::move(costs);
  return s;
}

double ClickProb(const AdCandidate& ad, int start, const PageConfig& page) {
  if (start < 0 || ad.height < 1 || start + ad.height > page.lines) {
    throw PlacementInfeasibleError("candidate '" + ad.id + "' of height " +
                                   std::to_string(ad.height) +
                                   " cannot start at line " +
                                   std::to_string(start));
  }
  double covered = 0.0;
  for (int l = start; l < start + ad.height; ++l) covered += page.loc[l];
  const double p = ad.density * covered;
  if (p > 1.0) {
    WarnClamp(ad, start, p);
    return 1.0;
  }
  return p;
}

AuctionInstance::AuctionInstance(PageConfig page,
                                 std::vector<AdCandidate> candidates)
    : page_(std::move(page)), candidates_(std::move(candidates)) {
  page_.Validate();
  const int n = num_candidates();
  advertiser_of_.resize(n);
  for (int c = 0; c < n; ++c) {
    const AdCandidate& ad = candidates_[c];
    const std::string where = "candidate '" + ad.id + "'";
    if (!candidate_index_.emplace(ad.id, c).second) {
      throw InvalidInstanceError("duplicate candidate id '" + ad.id + "'");
    }
    if (ad.height < 1) throw InvalidInstanceError(where + ": height < 1");
    if (ad.height > page_.lines) {
      throw InvalidInstanceError(where + ": height " +
                                 std::to_string(ad.height) + " exceeds h=" +
                                 std::to_string(page_.lines));
    }
    if (!NonNegativeFinite(ad.bid)) {
      throw InvalidInstanceError(where + ": bid must be nonnegative");
    }
    if (!NonNegativeFinite(ad.density)) {
      throw InvalidInstanceError(where + ": density must be nonnegative");
    }
    if (ad.cost.is_constant()) {
      if (!NonNegativeFinite(ad.cost.constant())) {
        throw InvalidInstanceError(where + ": cost must be nonnegative");
      }
    } else {
      if (static_cast<int>(ad.cost.per_line().size()) != page_.lines) {
        throw InvalidInstanceError(where + ": cost vector length must equal h");
      }
      for (double v : ad.cost.per_line()) {
        if (!NonNegativeFinite(v)) {
          throw InvalidInstanceError(where + ": cost must be nonnegative");
        }
      }
    }
    auto [it, inserted] = advertiser_index_.emplace(
        ad.advertiser, static_cast<int>(advertisers_.size()));
    if (inserted) {
      advertisers_.push_back(ad.advertiser);
      advertiser_bids_.push_back(ad.bid);
      by_advertiser_.emplace_back();
    } else if (advertiser_bids_[it->second] != ad.bid) {
      throw InvalidInstanceError(where + ": bid differs from other variants of "
                                 "advertiser '" + ad.advertiser + "'");
    }
    advertiser_of_[c] = it->second;
    by_advertiser_[it->second].push_back(c);
  }

  const size_t cells = static_cast<size_t>(n) * page_.lines;
  click_.assign(cells, 0.0);
  cost_.assign(cells, 0.0);
  net_.assign(cells, 0.0);
  for (int c = 0; c < n; ++c) {
    const AdCandidate& ad = candidates_[c];
    for (int k = 0; k + ad.height <= page_.lines; ++k) {
      const double p = ClickProb(ad, k, page_);
      const double cost = ad.cost.At(k);
      click_[Cell(c, k)] = p;
      cost_[Cell(c, k)] = cost;
      net_[Cell(c, k)] = ad.bid * p - cost;
    }
  }
}

std::optional<int> AuctionInstance::FindAdvertiser(std::string_view id) const {
  auto it = advertiser_index_.find(std::string(id));
  if (it == advertiser_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> AuctionInstance::FindCandidate(std::string_view id) const {
  auto it = candidate_index_.find(std::string(id));
  if (it == candidate_index_.end()) return std::nullopt;
  return it->second;
}

AuctionInstance AuctionInstance::WithBid(int advertiser, double bid) const {
  std::vector<AdCandidate> copy = candidates_;
  for (int c : by_advertiser_[advertiser]) copy[c].bid = bid;
  return AuctionInstance(page_, std::move(copy));
}

AuctionInstance AuctionInstance::WithAdlim(int adlim) const {
  PageConfig page = page_;
  page.adlim = adlim;
  return AuctionInstance(std::move(page), candidates_);
}

AuctionInstance AuctionInstance::WithoutAdvertiser(int advertiser) const {
  std::vector<AdCandidate> kept;
  for (int c = 0; c < num_candidates(); ++c) {
    if (advertiser_of_[c] != advertiser) kept.push_back(candidates_[c]);
  }
  return AuctionInstance(page_, std::move(kept));
}

Slate Slate::Stack(const AuctionInstance& inst, std::span<const int> order) {
  Slate s;
  s.placements_.reserve(order.size());
  s.ads_.reserve(order.size());
  int line = 0;
  for (int c : order) {
    PlacedAd ad;
    if (c >= 0 && c < inst.num_candidates()) {
      ad.advertiser = inst.advertiser_of(c);
      if (line + inst.candidate(c).height <= inst.lines()) {
        ad.clicks = inst.click(c, line);
        ad.cost = inst.cost(c, line);
        s.objective_ += inst.net_value(c, line);
      }
      s.placements_.push_back({c, line});
      line += inst.candidate(c).height;
    } else {
      ad.advertiser = -1;
      s.placements_.push_back({c, line});
    }
    s.ads_.push_back(ad);
  }
  s.total_lines_ = line;
  return s;
}

double Slate::clicks(int advertiser) const {
  for (const PlacedAd& ad : ads_) {
    if (ad.advertiser == advertiser) return ad.clicks;
  }
  return 0.0;
}

double Slate::cost_of(int advertiser) const {
  for (const PlacedAd& ad : ads_) {
    if (ad.advertiser == advertiser) return ad.cost;
  }
  return 0.0;
}

bool Slate::Shows(int advertiser) const {
  return std::any_of(ads_.begin(), ads_.end(), [&](const PlacedAd& ad) {
    return ad.advertiser == advertiser;
  });
}

std::vector<int> Slate::order() const {
  std::vector<int> out;
  out.reserve(placements_.size());
  for (const Placement& p : placements_) out.push_back(p.candidate);
  return out;
}

bool Feasible(const Slate& slate, const AuctionInstance& inst) {
  if (slate.size() > inst.adlim()) return false;
  std::vector<bool> used(inst.num_advertisers(), false);
  int line = 0;
  for (size_t j = 0; j < slate.placements().size(); ++j) {
    const Placement& p = slate.placements()[j];
    if (p.candidate < 0 || p.candidate >= inst.num_candidates()) return false;
    if (p.start != line) return false;
    const int height = inst.candidate(p.candidate).height;
    if (line + height > inst.lines()) return false;
    const int a = inst.advertiser_of(p.candidate);
    if (used[a]) return false;
    used[a] = true;
    const PlacedAd& ad = slate.ads()[j];
    if (ad.advertiser != a || ad.clicks != inst.click(p.candidate, line) ||
        ad.cost != inst.cost(p.candidate, line)) {
      return false;
    }
    line += height;
  }
  return true;
}

double Objective(const Slate& slate, const AuctionInstance& inst) {
  if (!Feasible(slate, inst)) {
    throw InfeasibleSlateError("slate violates advertiser, line or adlim "
                               "constraints");
  }
  double total = 0.0;
  for (const Placement& p : slate.placements()) {
    const AdCandidate& ad = inst.candidate(p.candidate);
    total += ad.bid * ClickProb(ad, p.start, inst.page()) - ad.cost.At(p.start);
  }
  return total;
}

bool Preferred(double objective, int size, int lines, double best_objective,
               int best_size, int best_lines) {
  if (objective > best_objective + kTolerance) return true;
  if (objective < best_objective - kTolerance) return false;
  if (size != best_size) return size < best_size;
  return lines < best_lines;
}

}  // namespace richslate
