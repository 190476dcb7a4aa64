// Copyright 2026 The cskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cskit/attnbleed.hpp"
#include "cskit/augment.hpp"
#include "cskit/bleu.hpp"
#include "cskit/checks.hpp"
#include "cskit/corpus.hpp"
#include "cskit/error.hpp"
#include "cskit/io.hpp"
#include "cskit/manifest.hpp"
#include "cskit/segment.hpp"
#include "cskit/version.hpp"

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

struct StatsArgs {
  std::string tsv;
  std::string src;
  std::string tgt;
  std::string lang = "und";
  std::string dir;
  std::string target_lang = "en";
  std::string format = "json";
};

struct ChecksArgs {
  std::string kind;
  std::string dir;
  std::string target_lang = "en";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> count;
  bool all = false;
  int max_join = 4;
  std::string ctl_direction = "mixed";
  std::string join = " ";
  bool non_coherent = false;
  std::string out;
};

struct AugmentArgs {
  std::string kind;
  std::vector<std::string> tsv;
  std::vector<std::string> paired;  // lang:src:tgt
  std::string lang;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double noise_r = 0.1;
  std::string vocab;
  int max_joins = 2;
  std::string target_lang = "en";
  std::string join = " ";
  std::string out;
};

struct BleedArgs {
  std::string attn;
  bool strict = false;
  bool scale = false;
  bool ragged = false;
  std::string out;
};

struct ScoreArgs {
  std::string hyp;
  std::string ref;
  std::string smooth = "none";
  std::string out;
};

std::string format_stats_json(const cskit::CorpusStats& s) {
  njson j;
  j["segments"] = s.segments;
  j["src_tokens"] = s.src_tokens;
  j["tgt_tokens"] = s.tgt_tokens;
  return j.dump();
}

void print_stats_table(
    const std::vector<std::pair<cskit::LangCode, cskit::CorpusStats>>& rows,
    std::ostream& out) {
  std::size_t lang_width = 8;
  for (const auto& [lang, s] : rows) {
    lang_width = std::max(lang_width, lang.size());
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-*s %12s %12s %12s\n",
                static_cast<int>(lang_width), "language", "segments",
                "src_tokens", "tgt_tokens");
  out << buf;
  cskit::CorpusStats all;
  for (const auto& [lang, s] : rows) {
    all += s;
    std::snprintf(buf, sizeof(buf), "%-*s %12llu %12llu %12llu\n",
                  static_cast<int>(lang_width), lang.c_str(),
                  static_cast<unsigned long long>(s.segments),
                  static_cast<unsigned long long>(s.src_tokens),
                  static_cast<unsigned long long>(s.tgt_tokens));
    out << buf;
  }
  if (rows.size() > 1) {
    std::snprintf(buf, sizeof(buf), "%-*s %12llu %12llu %12llu\n",
                  static_cast<int>(lang_width), "all",
                  static_cast<unsigned long long>(all.segments),
                  static_cast<unsigned long long>(all.src_tokens),
                  static_cast<unsigned long long>(all.tgt_tokens));
    out << buf;
  }
}

int run_stats(const StatsArgs& args) {
  std::vector<std::pair<cskit::LangCode, cskit::CorpusStats>> rows;
  if (!args.dir.empty()) {
    const auto corpus =
        cskit::load_multiparallel(args.dir, args.target_lang);
    rows = cskit::per_language_stats(corpus);
  } else if (!args.tsv.empty()) {
    for (const auto& corpus :
         cskit::load_parallel_groups(args.tsv, args.lang, false)) {
      rows.emplace_back(corpus.lang, cskit::stats(corpus));
    }
  } else if (!args.src.empty() && !args.tgt.empty()) {
    const auto corpus =
        cskit::load_parallel_paired(args.src, args.tgt, args.lang, false);
    rows.emplace_back(corpus.lang, cskit::stats(corpus));
  } else {
    throw cskit::ConfigError(
        "stats needs --tsv FILE, --src/--tgt, or --dir DIR");
  }

  if (args.format == "table") {
    print_stats_table(rows, std::cout);
  } else {
    cskit::CorpusStats all;
    for (const auto& [lang, s] : rows) all += s;
    std::cout << format_stats_json(all) << "\n";
  }
  return 0;
}

std::vector<fs::path> dir_inputs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

void write_generated(const std::string& out_prefix,
                     std::span<const cskit::GeneratedSegment> segments,
                     const std::vector<std::string>& command,
                     std::uint64_t seed,
                     const std::vector<fs::path>& inputs) {
  const fs::path jsonl = out_prefix + ".jsonl";
  const fs::path src = out_prefix + ".src";
  const fs::path tgt = out_prefix + ".tgt";
  cskit::write_segments_jsonl(jsonl, segments);
  cskit::write_segments_text(src, tgt, segments);
  const auto manifest =
      cskit::make_manifest(command, seed, inputs, {jsonl, src, tgt});
  cskit::write_manifest(out_prefix + ".manifest.json", manifest);
  std::cerr << "wrote " << segments.size() << " segments to " << out_prefix
            << ".{jsonl,src,tgt}\n";
}

int run_checks(const ChecksArgs& args,
               const std::vector<std::string>& command) {
  const auto corpus = cskit::load_multiparallel(args.dir, args.target_lang,
                                                !args.non_coherent);
  cskit::CheckSpec spec;
  spec.seed = args.seed;
  spec.join = args.join;
  if (args.all) {
    spec.count = std::nullopt;
  } else if (args.count) {
    spec.count = args.count;
  } else {
    // Default to the size of the union of the per-language originals.
    spec.count = static_cast<std::uint64_t>(corpus.num_langs()) * corpus.size();
  }

  std::vector<cskit::GeneratedSegment> segments;
  if (args.kind == "ctl") {
    cskit::CtlDirection direction = cskit::CtlDirection::kMixed;
    if (args.ctl_direction == "fwd") direction = cskit::CtlDirection::kFwd;
    else if (args.ctl_direction == "rev") direction = cskit::CtlDirection::kRev;
    segments = cskit::gen_ctl(corpus, direction, spec);
  } else if (args.kind == "csl") {
    segments = cskit::gen_csl(corpus, spec);
  } else if (args.kind == "cxl") {
    segments = cskit::gen_cxl(corpus, spec);
  } else if (args.kind == "rxl") {
    segments = cskit::gen_rxl(corpus, spec);
  } else if (args.kind == "cksl") {
    segments = cskit::gen_cksl(corpus, args.max_join, spec);
  } else {
    throw cskit::ParamError("unknown check kind: '" + args.kind + "'");
  }
  write_generated(args.out, segments, command, args.seed,
                  dir_inputs(args.dir));
  return 0;
}

std::vector<cskit::ParallelCorpus> load_augment_inputs(
    const AugmentArgs& args, std::vector<fs::path>* inputs) {
  std::map<cskit::LangCode, cskit::ParallelCorpus> by_lang;
  auto merge = [&by_lang](cskit::ParallelCorpus corpus) {
    auto [it, inserted] = by_lang.try_emplace(corpus.lang, std::move(corpus));
    if (!inserted) {
      auto& pairs = it->second.pairs;
      pairs.insert(pairs.end(), corpus.pairs.begin(), corpus.pairs.end());
    }
  };
  for (const auto& tsv : args.tsv) {
    inputs->push_back(tsv);
    const cskit::LangCode fallback = args.lang.empty() ? "und" : args.lang;
    for (auto& corpus : cskit::load_parallel_groups(tsv, fallback, false)) {
      merge(std::move(corpus));
    }
  }
  for (const auto& spec : args.paired) {
    const auto first = spec.find(':');
    const auto last = spec.rfind(':');
    if (first == std::string::npos || first == last) {
      throw cskit::ConfigError("--paired expects lang:srcfile:tgtfile, got '" +
                               spec + "'");
    }
    const std::string lang = spec.substr(0, first);
    const std::string src = spec.substr(first + 1, last - first - 1);
    const std::string tgt = spec.substr(last + 1);
    inputs->push_back(src);
    inputs->push_back(tgt);
    merge(cskit::load_parallel_paired(src, tgt, lang, false));
  }
  if (by_lang.empty()) {
    throw cskit::ConfigError("augment needs --tsv FILE or --paired "
                             "lang:srcfile:tgtfile input");
  }
  std::vector<cskit::ParallelCorpus> corpora;
  corpora.reserve(by_lang.size());
  for (auto& [lang, corpus] : by_lang) corpora.push_back(std::move(corpus));
  return corpora;
}

int run_augment(const AugmentArgs& args,
                const std::vector<std::string>& command) {
  std::vector<fs::path> inputs;
  const auto corpora = load_augment_inputs(args, &inputs);

  cskit::AugmentSpec spec;
  spec.budget = args.budget;
  spec.seed = args.seed;
  spec.join = args.join;
  spec.noise_r = args.noise_r;
  spec.max_joins = args.max_joins;
  spec.target_lang = args.target_lang;

  cskit::Vocabulary vocab;
  if (!args.vocab.empty()) {
    inputs.push_back(args.vocab);
    vocab = cskit::load_vocabulary(args.vocab,
                                   args.kind == "denoisetgt"
                                       ? cskit::Vocabulary::Side::kTarget
                                       : cskit::Vocabulary::Side::kSource);
    spec.vocab = &vocab;
  }

  std::vector<cskit::GeneratedSegment> segments;
  if (args.kind == "catsl") {
    segments = cskit::cat_sl(corpora, spec);
  } else if (args.kind == "catxl") {
    segments = cskit::cat_xl(corpora, spec);
  } else if (args.kind == "catrepeat") {
    segments = cskit::cat_repeat(corpora, spec);
  } else if (args.kind == "denoisetgt") {
    segments = cskit::denoise_tgt(corpora, spec);
  } else if (args.kind == "noisysrc") {
    segments = cskit::noisy_src(corpora, spec);
  } else {
    throw cskit::ParamError("unknown augment kind: '" + args.kind + "'");
  }
  write_generated(args.out, segments, command, args.seed, inputs);
  return 0;
}

int run_bleed(const BleedArgs& args) {
  cskit::AttentionParseOptions options;
  options.strict = args.strict;
  const auto parsed = cskit::parse_attention(args.attn, options);
  constexpr std::size_t kMaxWarnings = 50;
  for (std::size_t i = 0;
       i < parsed.deviations.size() && i < kMaxWarnings; ++i) {
    const auto& d = parsed.deviations[i];
    std::cerr << "warning: record '" << d.id << "' row (l=" << d.layer
              << ", h=" << d.head << ", t=" << d.row << ") sums to " << d.sum
              << "\n";
  }
  if (parsed.deviations.size() > kMaxWarnings) {
    std::cerr << "warning: " << (parsed.deviations.size() - kMaxWarnings)
              << " further row-sum deviations suppressed\n";
  }
  const auto report = cskit::mean_bleed(parsed.records, args.ragged);
  const std::string json = cskit::bleed_report_to_json(report, args.scale);
  if (args.out.empty()) {
    std::cout << json << "\n";
  } else {
    cskit::atomic_write(args.out, json + "\n");
    std::cerr << "bleed mean (scaled): " << cskit::format_scaled(report.mean)
              << "\n";
  }
  return 0;
}

int run_score(const ScoreArgs& args) {
  const auto hyp = cskit::read_lines(args.hyp);
  const auto ref = cskit::read_lines(args.ref);
  const auto smoothing = args.smooth == "add-k" ? cskit::Smoothing::kAddK
                                                : cskit::Smoothing::kNone;
  const auto report = cskit::bleu(hyp, ref, smoothing);
  const std::string json = cskit::bleu_report_to_json(report);
  if (args.out.empty()) {
    std::cout << json << "\n";
    std::cerr << cskit::summary_line(report) << "\n";
  } else {
    cskit::atomic_write(args.out, json + "\n");
    std::cout << cskit::summary_line(report) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> command(argv, argv + argc);

  CLI::App app{"code-switching robustness toolkit for multilingual MT data"};
  app.set_version_flag("--version", cskit::kVersion);
  app.require_subcommand(1);

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand(
      "stats", "segment and whitespace-token counts of a corpus");
  stats_cmd->add_option("--tsv", stats_args.tsv, "TSV corpus (src<TAB>tgt[<TAB>lang])");
  stats_cmd->add_option("--src", stats_args.src, "source side of a paired corpus");
  stats_cmd->add_option("--tgt", stats_args.tgt, "target side of a paired corpus");
  stats_cmd->add_option("--lang", stats_args.lang, "language code for --tsv/--src");
  stats_cmd->add_option("--dir", stats_args.dir,
                        "directory of line-aligned <lang>.txt files");
  stats_cmd->add_option("--target-lang", stats_args.target_lang,
                        "target language code for --dir")
      ->envname("CSKIT_TARGET_LANG");
  stats_cmd->add_option("--format", stats_args.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));

  ChecksArgs checks_args;
  auto* checks_cmd =
      app.add_subcommand("checks", "generate an evaluation check set");
  checks_cmd->add_option("--kind", checks_args.kind, "check kind")
      ->required()
      ->check(CLI::IsMember({"ctl", "csl", "cxl", "rxl", "cksl"}));
  checks_cmd->add_option("--dir", checks_args.dir,
                         "multi-parallel directory of <lang>.txt files")
      ->required();
  checks_cmd->add_option("--target-lang", checks_args.target_lang,
                         "target language code")
      ->envname("CSKIT_TARGET_LANG");
  checks_cmd->add_option("--seed", checks_args.seed, "random seed")->required();
  auto* count_opt =
      checks_cmd->add_option("--count", checks_args.count,
                             "segment count (default: languages x lines)");
  checks_cmd->add_flag("--all", checks_args.all, "emit every candidate")
      ->excludes(count_opt);
  checks_cmd->add_option("--max-join", checks_args.max_join,
                         "largest join count for --kind cksl");
  checks_cmd
      ->add_option("--ctl-direction", checks_args.ctl_direction,
                   "fwd, rev, or mixed")
      ->check(CLI::IsMember({"fwd", "rev", "mixed"}));
  checks_cmd->add_option("--join", checks_args.join, "join string")
      ->envname("CSKIT_JOIN");
  checks_cmd->add_flag("--non-coherent", checks_args.non_coherent,
                       "declare that line order is not document order");
  checks_cmd->add_option("--out", checks_args.out, "output path prefix")
      ->required();

  AugmentArgs augment_args;
  auto* augment_cmd =
      app.add_subcommand("augment", "generate a training augmentation set");
  augment_cmd->add_option("--kind", augment_args.kind, "augmentation kind")
      ->required()
      ->check(CLI::IsMember(
          {"catsl", "catxl", "catrepeat", "denoisetgt", "noisysrc"}));
  augment_cmd->add_option("--tsv", augment_args.tsv,
                          "TSV corpus, repeatable; rows may carry a language "
                          "column");
  augment_cmd->add_option("--paired", augment_args.paired,
                          "lang:srcfile:tgtfile, repeatable");
  augment_cmd->add_option("--lang", augment_args.lang,
                          "language code for TSV rows without one");
  augment_cmd->add_option("--budget", augment_args.budget,
                          "exact output segment count")
      ->required()
      ->check(CLI::PositiveNumber);
  augment_cmd->add_option("--seed", augment_args.seed, "random seed")
      ->required();
  augment_cmd->add_option("--noise-r", augment_args.noise_r,
                          "noise ratio for denoisetgt/noisysrc")
      ->envname("CSKIT_NOISE_R");
  augment_cmd->add_option("--vocab", augment_args.vocab,
                          "replacement vocabulary file, one type per line");
  augment_cmd->add_option("--max-joins", augment_args.max_joins,
                          "joins per concatenated segment, in [2, 4]");
  augment_cmd->add_option("--target-lang", augment_args.target_lang,
                          "language tag for denoised target-side sources")
      ->envname("CSKIT_TARGET_LANG");
  augment_cmd->add_option("--join", augment_args.join, "join string")
      ->envname("CSKIT_JOIN");
  augment_cmd->add_option("--out", augment_args.out, "output path prefix")
      ->required();

  BleedArgs bleed_args;
  auto* bleed_cmd = app.add_subcommand(
      "bleed", "cross-attention bleed report from exported tensors");
  bleed_cmd->add_option("--attn", bleed_args.attn,
                        "attention records (JSONL or CSAB binary)")
      ->required();
  bleed_cmd->add_flag("--strict", bleed_args.strict,
                      "treat row-sum deviations as errors");
  bleed_cmd->add_flag("--scale", bleed_args.scale,
                      "report on the 0-100 display scale");
  bleed_cmd->add_flag("--ragged", bleed_args.ragged,
                      "allow differing layer/head counts across records");
  bleed_cmd->add_option("--out", bleed_args.out, "write report here instead "
                        "of stdout");

  ScoreArgs score_args;
  auto* score_cmd =
      app.add_subcommand("score", "corpus BLEU of hypotheses vs references");
  score_cmd->add_option("--hyp", score_args.hyp, "hypothesis file")->required();
  score_cmd->add_option("--ref", score_args.ref, "reference file")->required();
  score_cmd->add_option("--smooth", score_args.smooth, "none or add-k")
      ->check(CLI::IsMember({"none", "add-k"}));
  score_cmd->add_option("--out", score_args.out, "write report here instead "
                        "of stdout");

  try {
    app.parse(argc, argv);
    if (stats_cmd->parsed()) return run_stats(stats_args);
    if (checks_cmd->parsed()) return run_checks(checks_args, command);
    if (augment_cmd->parsed()) return run_augment(augment_args, command);
    if (bleed_cmd->parsed()) return run_bleed(bleed_args);
    if (score_cmd->parsed()) return run_score(score_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const cskit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
