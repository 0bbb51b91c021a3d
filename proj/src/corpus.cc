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

#include "richslate/corpus.h"

#include <fstream>
#include <sstream>
#include <utility>

namespace richslate {
namespace {

using nlohmann::json;

const json& Field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw InvalidInstanceError(where + " must be an object");
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw InvalidInstanceError(where + ": missing field \"" + name + "\"");
  }
  return *it;
}

int IntField(const json& obj, const char* name, const std::string& where) {
  const json& v = Field(obj, name, where);
  if (!v.is_number_integer()) {
    throw InvalidInstanceError(where + "." + name + " must be an integer");
  }
  return v.get<int>();
}

double NumberField(const json& obj, const char* name, const std::string& where) {
  const json& v = Field(obj, name, where);
  if (!v.is_number()) {
    throw InvalidInstanceError(where + "." + name + " must be a number");
  }
  return v.get<double>();
}

std::string StringField(const json& obj, const char* name,
                        const std::string& where) {
  const json& v = Field(obj, name, where);
  if (!v.is_string()) {
    throw InvalidInstanceError(where + "." + name + " must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> NumberArray(const json& v, const std::string& where) {
  if (!v.is_array()) throw InvalidInstanceError(where + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) {
      throw InvalidInstanceError(where + " must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

int LineOfOffset(std::string_view text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Line on which each top-level array element starts.
std::vector<int> ElementLines(std::string_view text) {
  std::vector<int> lines;
  int depth = 0;
  int line = 1;
  bool in_string = false;
  bool escaped = false;
  bool expect_value = false;
  for (char ch : text) {
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (ch == '\\') {
        escaped = true;
      } else if (ch == '"') {
        in_string = false;
      }
      if (ch == '\n') ++line;
      continue;
    }
    if (ch == '\n') {
      ++line;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;
    if (depth == 1 && expect_value && ch != ']') {
      lines.push_back(line);
      expect_value = false;
    }
    if (ch == '"') {
      in_string = true;
    } else if (ch == '[' || ch == '{') {
      ++depth;
      if (depth == 1) expect_value = true;
    } else if (ch == ']' || ch == '}') {
      --depth;
    } else if (ch == ',' && depth == 1) {
      expect_value = true;
    }
  }
  return lines;
}

AuctionInstance FromJsonAt(const json& j, int line) {
  try {
    return InstanceFromJson(j);
  } catch (const InvalidInstanceError& e) {
    throw CorpusError(line, e.what());
  }
}

}  // namespace

CorpusError::CorpusError(int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                     : message),
      line_(line) {}

AuctionInstance InstanceFromJson(const json& j) {
  const json& page_json = Field(j, "page", "instance");
  PageConfig page;
  page.lines = IntField(page_json, "h", "page");
  page.adlim = IntField(page_json, "adlim", "page");
  page.loc = NumberArray(Field(page_json, "loc", "page"), "page.loc");

  const json& cands = Field(j, "candidates", "instance");
  if (!cands.is_array()) {
    throw InvalidInstanceError("instance.candidates must be an array");
  }
  std::vector<AdCandidate> candidates;
  candidates.reserve(cands.size());
  for (size_t c = 0; c < cands.size(); ++c) {
    const std::string where = "candidates[" + std::to_string(c) + "]";
    const json& cj = cands[c];
    AdCandidate ad;
    ad.id = StringField(cj, "id", where);
    ad.advertiser = StringField(cj, "advertiser", where);
    ad.height = IntField(cj, "height", where);
    ad.bid = NumberField(cj, "bid", where);
    ad.density = NumberField(cj, "density", where);
    const json& cost = Field(cj, "cost", where);
    if (cost.is_number()) {
      ad.cost = CostSchedule::Constant(cost.get<double>());
    } else if (cost.is_array()) {
      ad.cost = CostSchedule::PerLine(NumberArray(cost, where + ".cost"));
    } else {
      throw InvalidInstanceError(where + ".cost must be a number or an array");
    }
    candidates.push_back(std::move(ad));
  }
  return AuctionInstance(std::move(page), std::move(candidates));
}

json InstanceToJson(const AuctionInstance& inst) {
  json page = {{"h", inst.lines()},
               {"adlim", inst.adlim()},
               {"loc", inst.page().loc}};
  json cands = json::array();
  for (const AdCandidate& ad : inst.candidates()) {
    json cost = ad.cost.is_constant() ? json(ad.cost.constant())
                                      : json(ad.cost.per_line());
    cands.push_back({{"id", ad.id},
                     {"advertiser", ad.advertiser},
                     {"height", ad.height},
                     {"bid", ad.bid},
                     {"density", ad.density},
                     {"cost", std::move(cost)}});
  }
  return {{"page", std::move(page)}, {"candidates", std::move(cands)}};
}

std::vector<AuctionInstance> ParseCorpus(std::string_view text) {
  std::vector<AuctionInstance> corpus;
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return corpus;

  if (text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw CorpusError(LineOfOffset(text, e.byte), e.what());
    }
    const std::vector<int> lines = ElementLines(text);
    for (size_t i = 0; i < doc.size(); ++i) {
      corpus.push_back(FromJsonAt(doc[i], i < lines.size() ? lines[i] : 0));
    }
    return corpus;
  }

  // A single (possibly pretty-printed) object, else one object per line.
  json whole = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (whole.is_object()) {
    corpus.push_back(FromJsonAt(whole, LineOfOffset(text, first)));
    return corpus;
  }
  int line = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view row = text.substr(pos, end - pos);
    ++line;
    pos = end + 1;
    if (row.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    json j;
    try {
      j = json::parse(row);
    } catch (const json::parse_error& e) {
      throw CorpusError(line, e.what());
    }
    corpus.push_back(FromJsonAt(j, line));
    if (end == text.size()) break;
  }
  return corpus;
}

std::vector<AuctionInstance> ReadCorpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCorpus(buf.str());
}

std::string FormatCorpus(std::span<const AuctionInstance> corpus,
                         CorpusFormat format) {
  if (format == CorpusFormat::kArray) {
    json arr = json::array();
    for (const AuctionInstance& inst : corpus) arr.push_back(InstanceToJson(inst));
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const AuctionInstance& inst : corpus) {
    out += InstanceToJson(inst).dump();
    out += '\n';
  }
  return out;
}

}  // namespace richslate
