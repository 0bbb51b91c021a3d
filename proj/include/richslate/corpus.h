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

#ifndef RICHSLATE_CORPUS_H_
#define RICHSLATE_CORPUS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "richslate/core.h"

namespace richslate {

// Malformed corpus input. `line` is 1-based, 0 when unknown.
class CorpusError : public Error {
 public:
  CorpusError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class CorpusFormat { kArray, kNdjson };

// Field names: {"page": {"h", "adlim", "loc"}, "candidates": [{"id",
// "advertiser", "height", "bid", "density", "cost"}]}. Cost is a number or an
// array of h numbers. Throws InvalidInstanceError naming the offending field.
AuctionInstance InstanceFromJson(const nlohmann::json& j);
nlohmann::json InstanceToJson(const AuctionInstance& inst);

// Accepts a JSON array of instances, a single instance object, or one
// instance object per line. Throws CorpusError with the line of the failure.
std::vector<AuctionInstance> ParseCorpus(std::string_view text);
std::vector<AuctionInstance> ReadCorpus(const std::string& path);

std::string FormatCorpus(std::span<const AuctionInstance> corpus,
                         CorpusFormat format = CorpusFormat::kNdjson);

}  // namespace richslate

#endif  // RICHSLATE_CORPUS_H_
