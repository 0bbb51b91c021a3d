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

#include "richslate/allocator.h"

#include <algorithm>
#include <numeric>
#include <utility>

namespace richslate {
namespace {

uint64_t HashOrder(std::span<const int> order) {
  uint64_t h = 1469598103934665603ULL;
  for (int c : order) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(c)) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h ^ order.size();
}

double StackObjective(const AuctionInstance& inst, std::span<const int> order) {
  double total = 0.0;
  int line = 0;
  for (int c : order) {
    total += inst.net_value(c, line);
    line += inst.candidate(c).height;
  }
  return total;
}

}  // namespace

bool SearchLog::Record(const AuctionInstance& inst, std::span<const int> order,
                       double objective) {
  const uint64_t key = HashOrder(order);
  auto [lo, hi] = index_.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    const std::vector<int>& seen = entries_[it->second].order;
    if (std::equal(seen.begin(), seen.end(), order.begin(), order.end())) {
      return false;
    }
  }
  LogEntry entry;
  entry.order.assign(order.begin(), order.end());
  entry.ads.reserve(order.size());
  int line = 0;
  for (int c : order) {
    entry.ads.push_back(
        {inst.advertiser_of(c), inst.click(c, line), inst.cost(c, line)});
    line += inst.candidate(c).height;
  }
  entry.objective = objective;
  index_.emplace(key, entries_.size());
  entries_.push_back(std::move(entry));
  return true;
}

bool SearchLog::Record(const AuctionInstance& inst, const Slate& slate) {
  const std::vector<int> order = slate.order();
  return Record(inst, order, slate.objective());
}

bool SearchLog::Contains(std::span<const int> order) const {
  auto [lo, hi] = index_.equal_range(HashOrder(order));
  for (auto it = lo; it != hi; ++it) {
    const std::vector<int>& seen = entries_[it->second].order;
    if (std::equal(seen.begin(), seen.end(), order.begin(), order.end())) {
      return true;
    }
  }
  return false;
}

SearchBudget::SearchBudget(const SolveOptions& options)
    : start_(std::chrono::steady_clock::now()),
      swap_budget_(options.swap_budget) {
  if (options.deadline) deadline_ = start_ + *options.deadline;
}

bool SearchBudget::TickEvaluation() {
  ++stats_.evaluated;
  if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
    exhausted_ = true;
  }
  return !exhausted_;
}

bool SearchBudget::TickSwap() {
  ++stats_.swaps;
  if (stats_.swaps >= swap_budget_) exhausted_ = true;
  return !exhausted_;
}

double SearchBudget::ElapsedMs() const {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start_)
      .count();
}

std::vector<int> RankCandidates(const AuctionInstance& inst) {
  std::vector<int> ranked(inst.num_candidates());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    const AdCandidate& x = inst.candidate(a);
    const AdCandidate& y = inst.candidate(b);
    const double kx = x.bid * x.density;
    const double ky = y.bid * y.density;
    if (kx != ky) return kx > ky;
    return x.id < y.id;
  });
  return ranked;
}

namespace {

Slate GreedyFromRanking(const AuctionInstance& inst, std::span<const int> ranked,
                        int cardinality) {
  std::vector<int> order;
  std::vector<bool> used(inst.num_advertisers(), false);
  int line = 0;
  for (int c : ranked) {
    if (static_cast<int>(order.size()) >= cardinality) break;
    const int a = inst.advertiser_of(c);
    const int h = inst.candidate(c).height;
    if (used[a] || line + h > inst.lines()) continue;
    used[a] = true;
    order.push_back(c);
    line += h;
  }
  return Slate::Stack(inst, order);
}

// Local search over stack orders; `ranked` fixes the order in which swap-in
// candidates are tried.
std::vector<int> SearchFrom(std::vector<int> current, const AuctionInstance& inst,
                            std::span<const int> ranked, SearchLog& log,
                            SearchBudget& budget, std::vector<double>* trace) {
  const int n = inst.num_candidates();
  std::vector<int> rest;
  std::vector<int> trial;
  std::vector<char> in_rest_adv(inst.num_advertisers(), 0);
  std::vector<char> in_rest(n, 0);

  double x = StackObjective(inst, current);
  if (trace) trace->push_back(x);
  bool improved = true;
  while (improved && !budget.exhausted()) {
    improved = false;
    x = StackObjective(inst, current);
    for (size_t pos = 0; pos < current.size() && !improved; ++pos) {
      rest.clear();
      int rest_lines = 0;
      for (size_t j = 0; j < current.size(); ++j) {
        if (j == pos) continue;
        rest.push_back(current[j]);
        rest_lines += inst.candidate(current[j]).height;
      }
      std::fill(in_rest_adv.begin(), in_rest_adv.end(), 0);
      std::fill(in_rest.begin(), in_rest.end(), 0);
      for (int c : rest) {
        in_rest[c] = 1;
        in_rest_adv[inst.advertiser_of(c)] = 1;
      }
      for (int b : ranked) {
        if (in_rest[b] || in_rest_adv[inst.advertiser_of(b)]) continue;
        const int hb = inst.candidate(b).height;
        if (rest_lines + hb > inst.lines()) continue;
        for (size_t idx = 0; idx <= rest.size(); ++idx) {
          if (!budget.TickEvaluation()) return current;
          trial.assign(rest.begin(), rest.begin() + idx);
          trial.push_back(b);
          trial.insert(trial.end(), rest.begin() + idx, rest.end());
          const double value = StackObjective(inst, trial);
          log.Record(inst, trial, value);
          if (value > x + kTolerance) {
            current = trial;
            improved = true;
            if (trace) trace->push_back(value);
            budget.TickSwap();
            break;
          }
        }
        if (improved) break;
      }
    }
  }
  return current;
}

}  // namespace

Slate GreedyInit(const AuctionInstance& inst, int cardinality) {
  const std::vector<int> ranked = RankCandidates(inst);
  return GreedyFromRanking(inst, ranked, cardinality);
}

Slate LocalSearch(const Slate& start, const AuctionInstance& inst,
                  int cardinality, SearchLog& log) {
  SearchBudget budget{SolveOptions{}};
  return LocalSearch(start, inst, cardinality, log, budget);
}

Slate LocalSearch(const Slate& start, const AuctionInstance& inst,
                  int cardinality, SearchLog& log, SearchBudget& budget,
                  std::vector<double>* trace) {
  if (!Feasible(start, inst) || start.size() > cardinality) {
    throw InfeasibleSlateError("local search start slate is infeasible");
  }
  const std::vector<int> ranked = RankCandidates(inst);
  log.Record(inst, start);
  std::vector<int> result =
      SearchFrom(start.order(), inst, ranked, log, budget, trace);
  return Slate::Stack(inst, result);
}

SolveResult Solve(const AuctionInstance& inst, const SolveOptions& options) {
  SearchBudget budget(options);
  SolveResult result;
  const std::vector<int> ranked = RankCandidates(inst);

  result.per_cardinality[0] = Slate{};
  result.log.Record(inst, std::span<const int>{}, 0.0);

  // Greedy starts are cheap, so all of them are built before any search; the
  // anytime result then never falls below a greedy slate.
  std::vector<Slate> starts;
  for (int k = 1; k <= inst.adlim(); ++k) {
    starts.push_back(GreedyFromRanking(inst, ranked, k));
    result.log.Record(inst, starts.back());
  }

  for (int k = 1; k <= inst.adlim(); ++k) {
    const Slate& start = starts[k - 1];
    // Swaps preserve cardinality, so an identical start yields an identical
    // local optimum.
    if (k > 1 && start.order() == starts[k - 2].order() &&
        !budget.exhausted()) {
      result.per_cardinality[k] = result.per_cardinality[k - 1];
      result.traces[k] = result.traces[k - 1];
      continue;
    }
    if (budget.exhausted()) {
      result.per_cardinality[k] = start;
      continue;
    }
    std::vector<double>& trace = result.traces[k];
    result.per_cardinality[k] = Slate::Stack(
        inst, SearchFrom(start.order(), inst, ranked, result.log, budget,
                         &trace));
  }

  const Slate* best = &result.per_cardinality[0];
  for (const auto& [k, slate] : result.per_cardinality) {
    if (Preferred(slate.objective(), slate.size(), slate.total_lines(),
                  best->objective(), best->size(), best->total_lines())) {
      best = &slate;
    }
  }
  result.best = *best;
  result.truncated = budget.exhausted();
  result.stats = budget.stats();
  result.stats.elapsed_ms = budget.ElapsedMs();
  return result;
}

}  // namespace richslate
