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

#ifndef RICHSLATE_CORE_H_
#define RICHSLATE_CORE_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace richslate {

// Absolute tolerance for currency and probability comparisons.
inline constexpr double kTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

class PlacementInfeasibleError : public Error {
 public:
  using Error::Error;
};

class InfeasibleSlateError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

struct PageConfig {
  int lines = 0;  // H
  int adlim = 0;
  // Location clickability per line, index 0 is the top line.
  std::vector<double> loc;

  // Throws InvalidInstanceError.
  void Validate() const;
};

// c_a(k): either one constant for every start line or one value per line.
class CostSchedule {
 public:
  CostSchedule() = default;

  static CostSchedule Constant(double cost);
  static CostSchedule PerLine(std::vector<double> costs);

  double At(int start) const {
    return per_line_.empty() ? constant_ : per_line_[start];
  }
  bool is_constant() const { return per_line_.empty(); }
  double constant() const { return constant_; }
  const std::vector<double>& per_line() const { return per_line_; }

 private:
  double constant_ = 0.0;
  std::vector<double> per_line_;
};

struct AdCandidate {
  std::string id;
  std::string advertiser;
  int height = 1;
  double bid = 0.0;      // per click, shared by all variants of the advertiser
  double density = 0.0;  // click probability per unit of location clickability
  CostSchedule cost;
};

// p_a(k) = density * sum of loc over the lines the ad covers when it starts at
// line k, clamped to 1. Throws PlacementInfeasibleError if the ad does not fit.
double ClickProb(const AdCandidate& ad, int start, const PageConfig& page);

// An immutable candidate set plus page configuration. Advertisers and
// candidates are addressed by dense indices; per-placement click and value
// tables are precomputed on construction.
class AuctionInstance {
 public:
  AuctionInstance() = default;
  // Throws InvalidInstanceError when any invariant is violated.
  AuctionInstance(PageConfig page, std::vector<AdCandidate> candidates);

  const PageConfig& page() const { return page_; }
  int lines() const { return page_.lines; }
  int adlim() const { return page_.adlim; }

  std::span<const AdCandidate> candidates() const { return candidates_; }
  const AdCandidate& candidate(int c) const { return candidates_[c]; }
  int num_candidates() const { return static_cast<int>(candidates_.size()); }

  int num_advertisers() const { return static_cast<int>(advertisers_.size()); }
  const std::string& advertiser_id(int a) const { return advertisers_[a]; }
  double advertiser_bid(int a) const { return advertiser_bids_[a]; }
  int advertiser_of(int c) const { return advertiser_of_[c]; }
  std::span<const int> candidates_of(int a) const { return by_advertiser_[a]; }

  std::optional<int> FindAdvertiser(std::string_view id) const;
  std::optional<int> FindCandidate(std::string_view id) const;

  // Table lookups; `start` must satisfy start + height <= lines.
  double click(int c, int start) const { return click_[Cell(c, start)]; }
  double cost(int c, int start) const { return cost_[Cell(c, start)]; }
  double net_value(int c, int start) const { return net_[Cell(c, start)]; }

  // Copy with every variant of `advertiser` bidding `bid`.
  AuctionInstance WithBid(int advertiser, double bid) const;
  AuctionInstance WithAdlim(int adlim) const;
  // Copy with every variant of `advertiser` removed.
  AuctionInstance WithoutAdvertiser(int advertiser) const;

 private:
  size_t Cell(int c, int start) const {
    return static_cast<size_t>(c) * page_.lines + start;
  }

  PageConfig page_;
  std::vector<AdCandidate> candidates_;
  std::vector<std::string> advertisers_;
  std::vector<double> advertiser_bids_;
  std::vector<int> advertiser_of_;
  std::vector<std::vector<int>> by_advertiser_;
  std::unordered_map<std::string, int> advertiser_index_;
  std::unordered_map<std::string, int> candidate_index_;
  std::vector<double> click_;
  std::vector<double> cost_;
  std::vector<double> net_;
};

struct Placement {
  int candidate = 0;
  int start = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Per-ad quantities cached alongside a placement.
struct PlacedAd {
  int advertiser = 0;
  double clicks = 0.0;
  double cost = 0.0;
};

// An ordered stack of ads starting at line 0. Built with Stack(); the cached
// clicks and objective are meaningful only when Feasible() holds.
class Slate {
 public:
  Slate() = default;

  static Slate Stack(const AuctionInstance& inst, std::span<const int> order);

  std::span<const Placement> placements() const { return placements_; }
  std::span<const PlacedAd> ads() const { return ads_; }
  double objective() const { return objective_; }
  int size() const { return static_cast<int>(placements_.size()); }
  bool empty() const { return placements_.empty(); }
  int total_lines() const { return total_lines_; }

  // x_i of the slate; zero when the advertiser is not shown.
  double clicks(int advertiser) const;
  double cost_of(int advertiser) const;
  bool Shows(int advertiser) const;
  std::vector<int> order() const;

 private:
  std::vector<Placement> placements_;
  std::vector<PlacedAd> ads_;
  double objective_ = 0.0;
  int total_lines_ = 0;
};

// Advertiser uniqueness, contiguous stacking within H lines and at most adlim
// ads; also checks that the cached per-ad values match the instance.
bool Feasible(const Slate& slate, const AuctionInstance& inst);

// Sum of bid * p_a(k) - c_a(k) over placements, recomputed from the
// instance. Throws InfeasibleSlateError.
double Objective(const Slate& slate, const AuctionInstance& inst);

// Slate preference used by every solver: higher objective beyond kTolerance,
// then fewer ads, then fewer lines.
bool Preferred(double objective, int size, int lines, double best_objective,
               int best_size, int best_lines);

}  // namespace richslate

#endif  // RICHSLATE_CORE_H_
