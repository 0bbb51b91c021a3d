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

#ifndef RICHSLATE_ALLOCATOR_H_
#define RICHSLATE_ALLOCATOR_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "richslate/core.h"

namespace richslate {

// One evaluated slate: who was shown, at what click probability and cost,
// and the slate objective.
struct LogEntry {
  std::vector<int> order;
  std::vector<PlacedAd> ads;
  double objective = 0.0;
};

// The set of distinct feasible slates a search evaluated, keyed by stack
// order (equivalent to the sorted placement signature for gap-free stacks).
class SearchLog {
 public:
  // Returns false if the slate was already recorded.
  bool Record(const AuctionInstance& inst, std::span<const int> order,
              double objective);
  bool Record(const AuctionInstance& inst, const Slate& slate);

  bool Contains(std::span<const int> order) const;
  std::span<const LogEntry> entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<LogEntry> entries_;
  std::unordered_multimap<uint64_t, size_t> index_;
};

struct SolveOptions {
  int64_t swap_budget = 10000;
  // Wall-clock budget measured from the start of Solve().
  std::optional<std::chrono::nanoseconds> deadline;
};

struct SolveStats {
  int64_t swaps = 0;
  int64_t evaluated = 0;
  double elapsed_ms = 0.0;
};

struct SolveResult {
  Slate best;
  // Locally optimal slate per cardinality; key 0 holds the empty slate.
  std::map<int, Slate> per_cardinality;
  SearchLog log;
  // Objective after the greedy start and after each accepted swap, per
  // cardinality.
  std::map<int, std::vector<double>> traces;
  SolveStats stats;
  // Set when the swap budget or the deadline stopped the search early.
  bool truncated = false;
};

// Shared stopping state for one search.
class SearchBudget {
 public:
  explicit SearchBudget(const SolveOptions& options);

  // Counts one evaluation; false once the deadline has passed.
  bool TickEvaluation();
  // Counts one accepted swap; false once the swap budget is spent.
  bool TickSwap();
  bool exhausted() const { return exhausted_; }
  const SolveStats& stats() const { return stats_; }
  double ElapsedMs() const;

 private:
  std::chrono::steady_clock::time_point start_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  int64_t swap_budget_;
  bool exhausted_ = false;
  SolveStats stats_;
};

// Candidate indices by descending bid * density, ties by candidate id.
std::vector<int> RankCandidates(const AuctionInstance& inst);

// Scans the ranked list, appending each candidate whose advertiser is unused
// and whose height still fits, until `cardinality` ads are placed.
Slate GreedyInit(const AuctionInstance& inst, int cardinality);

// 1-for-1 swap local search. Every evaluated slate is recorded in `log`.
Slate LocalSearch(const Slate& start, const AuctionInstance& inst,
                  int cardinality, SearchLog& log);
Slate LocalSearch(const Slate& start, const AuctionInstance& inst,
                  int cardinality, SearchLog& log, SearchBudget& budget,
                  std::vector<double>* trace = nullptr);

// Greedy start plus local search for every cardinality 1..adlim; returns the
// best slate together with the full search log.
SolveResult Solve(const AuctionInstance& inst, const SolveOptions& options = {});

}  // namespace richslate

#endif  // RICHSLATE_ALLOCATOR_H_
