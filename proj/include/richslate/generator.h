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

#ifndef RICHSLATE_GENERATOR_H_
#define RICHSLATE_GENERATOR_H_

#include <cstdint>
#include <vector>

#include "richslate/core.h"

namespace richslate {

// Synthetic corpus parameters. Defaults give desk-scale instances on an
// 18-line page.
struct GenConfig {
  uint64_t seed = 1;
  int n_instances = 100;
  int min_candidates = 5;
  int max_candidates = 15;
  int min_height = 3;
  int max_height = 8;
  // Each advertiser gets 1..max_variants variants of distinct heights.
  int max_variants = 3;
  // Per-advertiser bid ~ lognormal(bid_mu, bid_sigma).
  double bid_mu = 0.0;
  double bid_sigma = 0.75;
  // Base density ~ U[density_min, density_max]; a variant of height h gets
  // base * (min_height / h)^height_exponent.
  double density_min = 0.01;
  double density_max = 0.05;
  double height_exponent = 0.5;
  // loc[l] = loc_decay^l.
  double loc_decay = 0.9;
  double cost = 0.01;
  int lines = 18;
  int adlim = 5;

  // Throws ConfigError.
  void Validate() const;
};

// Same config, same corpus.
std::vector<AuctionInstance> Generate(const GenConfig& config);

}  // namespace richslate

#endif  // RICHSLATE_GENERATOR_H_
