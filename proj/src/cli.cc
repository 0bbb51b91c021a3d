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

#include "richslate/cli.h"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "richslate/allocator.h"
#include "richslate/corpus.h"
#include "richslate/curves.h"
#include "richslate/evaluation.h"
#include "richslate/generator.h"
#include "richslate/oracle.h"
#include "richslate/pricing.h"

namespace richslate {
namespace {

using nlohmann::json;

struct CommonFlags {
  std::string corpus;
  std::string out_path;
  std::string format = "json";
  double deadline_ms = 0.0;
  int64_t swap_budget = SolveOptions{}.swap_budget;
};

SolveOptions ToSolveOptions(const CommonFlags& flags) {
  SolveOptions options;
  options.swap_budget = flags.swap_budget;
  if (flags.deadline_ms > 0.0) {
    options.deadline = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double, std::milli>(flags.deadline_ms));
  }
  return options;
}

void Emit(const std::string& text, const std::string& out_path,
          std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error("cannot write '" + out_path + "'");
  file << text;
}

std::string CsvNumber(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string RunSolve(const CommonFlags& flags, bool timing) {
  const std::vector<AuctionInstance> corpus = ReadCorpus(flags.corpus);
  const SolveOptions options = ToSolveOptions(flags);
  json rows = json::array();
  std::string csv = "instance,position,id,advertiser,start,height,clicks,objective\n";
  for (size_t i = 0; i < corpus.size(); ++i) {
    const AuctionInstance& inst = corpus[i];
    const SolveResult r = Solve(inst, options);
    json slate = json::array();
    for (size_t j = 0; j < r.best.placements().size(); ++j) {
      const Placement& p = r.best.placements()[j];
      const AdCandidate& ad = inst.candidate(p.candidate);
      slate.push_back({{"id", ad.id},
                       {"advertiser", ad.advertiser},
                       {"start", p.start},
                       {"height", ad.height},
                       {"clicks", r.best.ads()[j].clicks}});
      csv += std::to_string(i) + "," + std::to_string(j) + "," + ad.id + "," +
             ad.advertiser + "," + std::to_string(p.start) + "," +
             std::to_string(ad.height) + "," + CsvNumber(r.best.ads()[j].clicks) +
             "," + CsvNumber(r.best.objective()) + "\n";
    }
    json stats = {{"swaps", r.stats.swaps},
                  {"evaluated", r.stats.evaluated},
                  {"logged", r.log.size()}};
    if (timing) stats["elapsed_ms"] = r.stats.elapsed_ms;
    rows.push_back({{"instance", i},
                    {"slate", std::move(slate)},
                    {"objective", r.best.objective()},
                    {"truncated", r.truncated},
                    {"stats", std::move(stats)}});
  }
  return flags.format == "csv" ? csv : rows.dump(2) + "\n";
}

std::string RunCurves(const CommonFlags& flags, const std::string& advertiser,
                      bool exact) {
  const std::vector<AuctionInstance> corpus = ReadCorpus(flags.corpus);
  const SolveOptions options = ToSolveOptions(flags);
  json rows = json::array();
  std::string csv = "instance,advertiser,segment,tau,alloc\n";
  for (size_t i = 0; i < corpus.size(); ++i) {
    const AuctionInstance& inst = corpus[i];
    const SolveResult r = Solve(inst, options);
    json curves = json::array();
    for (int a = 0; a < inst.num_advertisers(); ++a) {
      if (!advertiser.empty() && inst.advertiser_id(a) != advertiser) continue;
      const AllocationCurve curve =
          exact ? ExactCurve(inst, a) : CurveFor(r, inst, a);
      curves.push_back({{"advertiser", inst.advertiser_id(a)},
                        {"taus", curve.taus},
                        {"allocs", curve.allocs}});
      for (int j = 0; j < curve.segments(); ++j) {
        csv += std::to_string(i) + "," + inst.advertiser_id(a) + "," +
               std::to_string(j) + "," + CsvNumber(curve.taus[j]) + "," +
               CsvNumber(curve.allocs[j]) + "\n";
      }
    }
    rows.push_back({{"instance", i}, {"curves", std::move(curves)}});
  }
  return flags.format == "csv" ? csv : rows.dump(2) + "\n";
}

std::string RunPrice(const CommonFlags& flags, const std::string& scheme_name,
                     double alpha) {
  const Scheme scheme = ParseScheme(scheme_name);
  const std::vector<AuctionInstance> corpus = ReadCorpus(flags.corpus);
  const SolveOptions options = ToSolveOptions(flags);
  json rows = json::array();
  std::string csv = "instance,advertiser,bid,scheme,alpha,per_click,segment,clicks\n";
  for (size_t i = 0; i < corpus.size(); ++i) {
    const AuctionInstance& inst = corpus[i];
    const SolveResult r = Solve(inst, options);
    for (const PlacedAd& ad : r.best.ads()) {
      if (!(ad.clicks > 0.0)) continue;
      const double bid = inst.advertiser_bid(ad.advertiser);
      const PriceQuote q =
          Quote(CurveFor(r, inst, ad.advertiser), bid, scheme, alpha);
      const std::string& id = inst.advertiser_id(ad.advertiser);
      rows.push_back({{"instance", i},
                      {"advertiser", id},
                      {"bid", bid},
                      {"scheme", SchemeName(q.scheme)},
                      {"alpha", q.alpha},
                      {"per_click", q.per_click},
                      {"segment", q.segment},
                      {"clicks", q.clicks}});
      csv += std::to_string(i) + "," + id + "," + CsvNumber(bid) + "," +
             SchemeName(q.scheme) + "," + CsvNumber(q.alpha) + "," +
             CsvNumber(q.per_click) + "," + std::to_string(q.segment) + "," +
             CsvNumber(q.clicks) + "\n";
    }
  }
  return flags.format == "csv" ? csv : rows.dump(2) + "\n";
}

std::string FormatReport(const EvalReport& report, const std::string& format,
                         bool timing) {
  if (format == "csv") return ReportToCsv(report, timing);
  return ReportToJson(report, timing).dump(2) + "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Rich-ad slate allocation, allocation curves and pricing"};
  app.name("richslate");
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("corpus", flags.corpus, "Corpus file (JSON array or NDJSON)")
        ->required();
    cmd->add_option("--out", flags.out_path, "Write output to this file");
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--deadline-ms", flags.deadline_ms,
                    "Wall-clock budget per solve in milliseconds");
    cmd->add_option("--swap-budget", flags.swap_budget,
                    "Maximum accepted swaps per solve");
  };

  GenConfig gen;
  std::string gen_format = "ndjson";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--n", gen.n_instances, "Number of instances");
  gen_cmd->add_option("--min-candidates", gen.min_candidates);
  gen_cmd->add_option("--max-candidates", gen.max_candidates);
  gen_cmd->add_option("--min-height", gen.min_height);
  gen_cmd->add_option("--max-height", gen.max_height);
  gen_cmd->add_option("--max-variants", gen.max_variants);
  gen_cmd->add_option("--bid-mu", gen.bid_mu);
  gen_cmd->add_option("--bid-sigma", gen.bid_sigma);
  gen_cmd->add_option("--density-min", gen.density_min);
  gen_cmd->add_option("--density-max", gen.density_max);
  gen_cmd->add_option("--height-exponent", gen.height_exponent);
  gen_cmd->add_option("--loc-decay", gen.loc_decay);
  gen_cmd->add_option("--cost", gen.cost);
  gen_cmd->add_option("--lines", gen.lines, "Page height H");
  gen_cmd->add_option("--adlim", gen.adlim);
  gen_cmd->add_option("--format", gen_format)
      ->check(CLI::IsMember({"ndjson", "array"}));
  gen_cmd->add_option("--out", flags.out_path);

  bool timing = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve every instance");
  add_common(solve_cmd);
  solve_cmd->add_flag("--timing", timing, "Include per-instance solve time");

  std::string advertiser;
  bool exact_curves = false;
  auto* curves_cmd =
      app.add_subcommand("curves", "Per-advertiser allocation curves");
  add_common(curves_cmd);
  curves_cmd->add_option("--advertiser", advertiser, "Only this advertiser");
  curves_cmd->add_flag("--exact", exact_curves,
                       "Use the bisection oracle instead of the search log");

  std::string scheme = "gsp";
  double alpha = kDefaultAlpha;
  auto* price_cmd = app.add_subcommand("price", "Price every shown advertiser");
  add_common(price_cmd);
  price_cmd->add_option("--scheme", scheme)
      ->check(CLI::IsMember({"first", "gsp", "vcg", "roi", "alpha"}));
  price_cmd->add_option("--alpha", alpha)->check(CLI::NonNegativeNumber);

  std::vector<int> adlims = {2, 3, 4, 5};
  int threads = 1;
  int max_candidates = ExactOptions{}.max_candidates;
  auto* eval_cmd =
      app.add_subcommand("eval", "Heuristic vs exact allocation efficiency");
  add_common(eval_cmd);
  eval_cmd->add_option("--adlims", adlims, "Comma-separated ad limits")
      ->delimiter(',');
  eval_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--timing", timing, "Include solve-time percentiles");
  eval_cmd->add_option("--max-candidates", max_candidates,
                       "Exact solver size guard");

  auto* acc_cmd = app.add_subcommand(
      "price-accuracy", "Heuristic-curve prices vs bisection-curve prices");
  add_common(acc_cmd);
  acc_cmd->add_option("--scheme", scheme)
      ->check(CLI::IsMember({"first", "gsp", "vcg", "roi", "alpha"}));
  acc_cmd->add_option("--alpha", alpha)->check(CLI::NonNegativeNumber);
  acc_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  acc_cmd->add_flag("--timing", timing, "Include solve-time percentiles");
  acc_cmd->add_option("--max-candidates", max_candidates,
                      "Exact solver size guard");

  std::vector<std::string> argv_storage;
  argv_storage.push_back("richslate");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return 2;
  }

  try {
    EvalOptions eval_options;
    eval_options.threads = threads;
    eval_options.solve = ToSolveOptions(flags);
    eval_options.exact.max_candidates = max_candidates;

    if (gen_cmd->parsed()) {
      const std::vector<AuctionInstance> corpus = Generate(gen);
      Emit(FormatCorpus(corpus, gen_format == "array" ? CorpusFormat::kArray
                                                      : CorpusFormat::kNdjson),
           flags.out_path, out);
    } else if (solve_cmd->parsed()) {
      Emit(RunSolve(flags, timing), flags.out_path, out);
    } else if (curves_cmd->parsed()) {
      Emit(RunCurves(flags, advertiser, exact_curves), flags.out_path, out);
    } else if (price_cmd->parsed()) {
      Emit(RunPrice(flags, scheme, alpha), flags.out_path, out);
    } else if (eval_cmd->parsed()) {
      const std::vector<AuctionInstance> corpus = ReadCorpus(flags.corpus);
      EvalReport report;
      if (!corpus.empty()) report = EvalAllocation(corpus, adlims, eval_options);
      Emit(FormatReport(report, flags.format, timing), flags.out_path, out);
    } else if (acc_cmd->parsed()) {
      const std::vector<AuctionInstance> corpus = ReadCorpus(flags.corpus);
      EvalReport report;
      if (!corpus.empty()) {
        report = EvalPrices(corpus, ParseScheme(scheme), alpha, eval_options);
      }
      Emit(FormatReport(report, flags.format, timing), flags.out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace richslate
