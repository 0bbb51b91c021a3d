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

#include "richslate/generator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace richslate {

void GenConfig::Validate() const {
  if (n_instances < 0) throw ConfigError("n_instances must be >= 0");
  if (min_candidates < 0 || max_candidates < min_candidates) {
    throw ConfigError("candidate range must satisfy 0 <= min <= max");
  }
  if (min_height < 1 || max_height < min_height) {
    throw ConfigError("height range must satisfy 1 <= min <= max");
  }
  if (max_height > lines) throw ConfigError("max_height exceeds page lines");
  if (max_variants < 1) throw ConfigError("max_variants must be >= 1");
  if (!(bid_sigma > 0.0) || !std::isfinite(bid_mu)) {
    throw ConfigError("bid distribution needs sigma > 0 and finite mu");
  }
  if (!(density_min >= 0.0) || density_max < density_min) {
    throw ConfigError("density range must satisfy 0 <= min <= max");
  }
  if (!(height_exponent >= 0.0)) {
    throw ConfigError("height_exponent must be >= 0");
  }
  if (!(loc_decay > 0.0 && loc_decay <= 1.0)) {
    throw ConfigError("loc_decay must lie in (0, 1]");
  }
  if (!(cost >= 0.0)) throw ConfigError("cost must be >= 0");
  if (lines < 1 || adlim < 1) throw ConfigError("lines and adlim must be >= 1");
}

std::vector<AuctionInstance> Generate(const GenConfig& config) {
  config.Validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> count(config.min_candidates,
                                           config.max_candidates);
  std::uniform_int_distribution<int> variants(1, config.max_variants);
  std::lognormal_distribution<double> bid(config.bid_mu, config.bid_sigma);
  std::uniform_real_distribution<double> density(config.density_min,
                                                 config.density_max);

  PageConfig page;
  page.lines = config.lines;
  page.adlim = config.adlim;
  page.loc.resize(config.lines);
  for (int l = 0; l < config.lines; ++l) {
    page.loc[l] = std::pow(config.loc_decay, l);
  }

  std::vector<int> heights(config.max_height - config.min_height + 1);
  std::iota(heights.begin(), heights.end(), config.min_height);

  std::vector<AuctionInstance> corpus;
  corpus.reserve(config.n_instances);
  for (int i = 0; i < config.n_instances; ++i) {
    const int n = count(rng);
    std::vector<AdCandidate> candidates;
    int advertiser = 0;
    while (static_cast<int>(candidates.size()) < n) {
      const int remaining = n - static_cast<int>(candidates.size());
      const int k = std::min({variants(rng), remaining,
                              static_cast<int>(heights.size())});
      const double b = bid(rng);
      const double base = density(rng);
      std::shuffle(heights.begin(), heights.end(), rng);
      std::vector<int> chosen(heights.begin(), heights.begin() + k);
      std::sort(chosen.begin(), chosen.end());
      const std::string adv = "adv" + std::to_string(advertiser);
      for (int h : chosen) {
        AdCandidate ad;
        ad.id = adv + "-h" + std::to_string(h);
        ad.advertiser = adv;
        ad.height = h;
        ad.bid = b;
        ad.density = base * std::pow(static_cast<double>(config.min_height) / h,
                                     config.height_exponent);
        ad.cost = CostSchedule::Constant(config.cost);
        candidates.push_back(std::move(ad));
      }
      ++advertiser;
    }
    corpus.emplace_back(page, std::move(candidates));
  }
  return corpus;
}

}  // namespace richslate
