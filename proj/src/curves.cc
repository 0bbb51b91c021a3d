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

#include "richslate/curves.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace richslate {
namespace {

// Bid at which `steeper` overtakes `flatter`.
double Crossing(const ObjectiveLine& flatter, const ObjectiveLine& steeper) {
  return (flatter.intercept - steeper.intercept) /
         (steeper.slope - flatter.slope);
}

// Per-slope maximum intercept, as lines.
class LineReducer {
 public:
  void Add(double slope, double intercept) {
    if (slope == 0.0) {
      flat_ = std::max(flat_, intercept);
      has_flat_ = true;
      return;
    }
    auto [it, inserted] = by_slope_.try_emplace(slope, intercept);
    if (!inserted) it->second = std::max(it->second, intercept);
  }

  std::vector<ObjectiveLine> Lines() const {
    std::vector<ObjectiveLine> out;
    out.reserve(by_slope_.size() + 1);
    if (has_flat_) out.push_back({0.0, flat_});
    for (const auto& [slope, intercept] : by_slope_) {
      out.push_back({slope, intercept});
    }
    return out;
  }

 private:
  double flat_ = -INFINITY;
  bool has_flat_ = false;
  std::unordered_map<double, double> by_slope_;
};

LineReducer ReduceLog(const SearchLog& log, const AuctionInstance& inst,
                      int advertiser) {
  LineReducer reducer;
  const double bid = inst.advertiser_bid(advertiser);
  for (const LogEntry& entry : log.entries()) {
    double slope = 0.0;
    for (const PlacedAd& ad : entry.ads) {
      if (ad.advertiser == advertiser) {
        slope = ad.clicks;
        break;
      }
    }
    reducer.Add(slope, entry.objective - slope * bid);
  }
  return reducer;
}

}  // namespace

double AllocationCurve::Evaluate(double bid) const {
  auto it = std::upper_bound(taus.begin(), taus.end(), bid);
  if (it == taus.begin()) return allocs.front();
  return allocs[std::distance(taus.begin(), it) - 1];
}

std::vector<ObjectiveLine> LinesFor(const SearchLog& log,
                                    const AuctionInstance& inst,
                                    int advertiser) {
  std::vector<ObjectiveLine> lines;
  lines.reserve(log.size());
  for (const LogEntry& entry : log.entries()) {
    ObjectiveLine line;
    for (const PlacedAd& ad : entry.ads) {
      if (ad.advertiser == advertiser) {
        line.slope = ad.clicks;
        line.intercept -= ad.cost;
      } else {
        line.intercept += ad.clicks * inst.advertiser_bid(ad.advertiser) - ad.cost;
      }
    }
    lines.push_back(line);
  }
  return lines;
}

AllocationCurve UpperEnvelope(std::span<const ObjectiveLine> lines) {
  if (lines.empty()) throw InternalError("upper envelope of zero lines");
  std::vector<ObjectiveLine> sorted(lines.begin(), lines.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectiveLine& a, const ObjectiveLine& b) {
              if (a.slope != b.slope) return a.slope < b.slope;
              return a.intercept > b.intercept;
            });
  std::vector<ObjectiveLine> distinct;
  for (const ObjectiveLine& line : sorted) {
    if (!distinct.empty() &&
        line.slope - distinct.back().slope <= kSlopeTolerance) {
      distinct.back().intercept =
          std::max(distinct.back().intercept, line.intercept);
      continue;
    }
    distinct.push_back(line);
  }

  // The active line at bid 0: highest intercept, steepest among ties.
  size_t base = 0;
  for (size_t j = 1; j < distinct.size(); ++j) {
    if (distinct[j].intercept >= distinct[base].intercept) base = j;
  }

  std::vector<ObjectiveLine> hull{distinct[base]};
  for (size_t j = base + 1; j < distinct.size(); ++j) {
    const ObjectiveLine& line = distinct[j];
    while (hull.size() >= 2 &&
           Crossing(hull[hull.size() - 2], line) <=
               Crossing(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(line);
  }

  AllocationCurve curve;
  curve.taus.assign(1, 0.0);
  curve.allocs.assign(1, hull.front().slope);
  for (size_t j = 1; j < hull.size(); ++j) {
    curve.taus.push_back(Crossing(hull[j - 1], hull[j]));
    curve.allocs.push_back(hull[j].slope);
  }
  return curve;
}

AllocationCurve CurveFromLog(const SearchLog& log, const AuctionInstance& inst,
                             int advertiser) {
  if (advertiser < 0 || advertiser >= inst.num_advertisers() || log.empty()) {
    return AllocationCurve::Zero();
  }
  const std::vector<ObjectiveLine> lines =
      ReduceLog(log, inst, advertiser).Lines();
  return UpperEnvelope(lines);
}

std::vector<AllocationCurve> CurvesFromLog(const SearchLog& log,
                                           const AuctionInstance& inst) {
  const int num_adv = inst.num_advertisers();
  std::vector<AllocationCurve> curves(num_adv);
  if (log.empty()) return curves;
  std::vector<LineReducer> reducers(num_adv);
  const std::span<const LogEntry> entries = log.entries();
  for (const LogEntry& entry : entries) {
    for (const PlacedAd& ad : entry.ads) {
      reducers[ad.advertiser].Add(
          ad.clicks,
          entry.objective - ad.clicks * inst.advertiser_bid(ad.advertiser));
    }
  }
  // Best objective among slates not showing each advertiser: walk the
  // entries by decreasing objective until one without the advertiser.
  std::vector<size_t> by_objective(entries.size());
  std::iota(by_objective.begin(), by_objective.end(), 0);
  std::sort(by_objective.begin(), by_objective.end(), [&](size_t a, size_t b) {
    return entries[a].objective > entries[b].objective;
  });
  for (int a = 0; a < num_adv; ++a) {
    for (size_t e : by_objective) {
      const auto& ads = entries[e].ads;
      const bool shows = std::any_of(ads.begin(), ads.end(), [&](const PlacedAd& ad) {
        return ad.advertiser == a;
      });
      if (!shows) {
        reducers[a].Add(0.0, entries[e].objective);
        break;
      }
    }
    const std::vector<ObjectiveLine> lines = reducers[a].Lines();
    curves[a] = lines.empty() ? AllocationCurve::Zero() : UpperEnvelope(lines);
  }
  return curves;
}

AllocationCurve CurveFor(const SolveResult& result, const AuctionInstance& inst,
                         int advertiser) {
  if (advertiser < 0 || advertiser >= inst.num_advertisers() ||
      result.log.empty()) {
    return AllocationCurve::Zero();
  }
  const std::vector<ObjectiveLine> lines =
      ReduceLog(result.log, inst, advertiser).Lines();
  AllocationCurve curve = UpperEnvelope(lines);

  const double bid = inst.advertiser_bid(advertiser);
  const double chosen = result.best.clicks(advertiser);
  if (std::abs(curve.Evaluate(bid) - chosen) > kSlopeTolerance) {
    // Acceptable only when the chosen slate ties the envelope at this bid.
    double envelope = -INFINITY;
    for (const ObjectiveLine& line : lines) {
      envelope = std::max(envelope, line.At(bid));
    }
    if (result.best.objective() < envelope - kTolerance) {
      throw InternalError(
          "allocation curve disagrees with the chosen slate for advertiser '" +
          inst.advertiser_id(advertiser) + "'");
    }
  }
  return curve;
}

AllocationCurve CurveFor(const SolveResult& result, const AuctionInstance& inst,
                         std::string_view advertiser) {
  const std::optional<int> a = inst.FindAdvertiser(advertiser);
  if (!a) return AllocationCurve::Zero();
  return CurveFor(result, inst, *a);
}

AllocationCurve Canonicalize(const AllocationCurve& curve, double eps) {
  AllocationCurve out;
  out.taus.clear();
  out.allocs.clear();
  const int n = curve.segments();
  double start = curve.taus.front();
  for (int j = 0; j < n; ++j) {
    const bool last = j + 1 == n;
    if (!last && curve.taus[j + 1] - start < eps) continue;
    if (!out.allocs.empty() &&
        std::abs(out.allocs.back() - curve.allocs[j]) <= kSlopeTolerance) {
      start = last ? start : curve.taus[j + 1];
      continue;
    }
    out.taus.push_back(start);
    out.allocs.push_back(curve.allocs[j]);
    if (!last) start = curve.taus[j + 1];
  }
  out.taus.front() = 0.0;
  return out;
}

bool CurvesMatch(const AllocationCurve& a, const AllocationCurve& b, double eps,
                 double upto, double alloc_tol) {
  auto clip = [&](const AllocationCurve& c) {
    AllocationCurve out = Canonicalize(c, eps);
    while (out.segments() > 1 && out.taus.back() > upto - eps) {
      out.taus.pop_back();
      out.allocs.pop_back();
    }
    return out;
  };
  const AllocationCurve ca = clip(a);
  const AllocationCurve cb = clip(b);
  if (ca.segments() != cb.segments()) return false;
  for (int j = 0; j < ca.segments(); ++j) {
    if (std::abs(ca.taus[j] - cb.taus[j]) > eps) return false;
    if (std::abs(ca.allocs[j] - cb.allocs[j]) > alloc_tol) return false;
  }
  return true;
}

}  // namespace richslate
