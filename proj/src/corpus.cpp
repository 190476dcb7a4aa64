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

#include "cskit/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cskit/error.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
  return fields;
}

struct TsvRow {
  std::string src;
  std::string tgt;
  LangCode lang;  // empty when the row had no language column
};

std::vector<TsvRow> parse_tsv(const std::filesystem::path& path,
                              bool* saw_lang_column) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<TsvRow> rows;
  rows.reserve(lines.size());
  bool with_lang = false;
  bool without_lang = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    const auto fields = split_tabs(lines[i]);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ValidationError(where + ": expected src<TAB>tgt[<TAB>lang], got " +
                            std::to_string(fields.size()) + " column(s)");
    }
    TsvRow row;
    row.src = normalize_sentence(fields[0], where + " (source)");
    row.tgt = normalize_sentence(fields[1], where + " (target)");
    if (fields.size() == 3) {
      row.lang = std::string(strip(fields[2]));
      validate_lang_code(row.lang);
      with_lang = true;
    } else {
      without_lang = true;
    }
    rows.push_back(std::move(row));
  }
  if (with_lang && without_lang) {
    throw ValidationError(path.string() +
                          ": language column present on some rows only");
  }
  if (saw_lang_column != nullptr) *saw_lang_column = with_lang;
  return rows;
}

}  // namespace

void validate_lang_code(const LangCode& code) {
  if (code.empty()) {
    throw ValidationError("language code must be non-empty");
  }
  for (char c : code) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (!ok) {
      throw ValidationError("language code must be lowercase ASCII "
                            "alphanumeric: '" + code + "'");
    }
  }
}

std::string normalize_sentence(std::string_view line, const std::string& where) {
  if (line.find('\n') != std::string_view::npos) {
    throw ValidationError(where + ": sentence contains interior newline");
  }
  const std::string_view stripped = strip(line);
  if (stripped.empty()) {
    throw ValidationError(where + ": empty sentence");
  }
  return std::string(stripped);
}

MultiParallelCorpus MultiParallelCorpus::create(
    std::vector<LangCode> langs, LangCode target_lang,
    std::vector<std::vector<std::string>> sources,
    std::vector<std::string> targets, bool order_coherent) {
  if (langs.empty()) {
    throw ConfigError("multi-parallel corpus needs at least one source language");
  }
  if (langs.size() != sources.size()) {
    throw ShapeError("got " + std::to_string(langs.size()) + " language codes "
                     "but " + std::to_string(sources.size()) + " source lists");
  }
  for (const auto& code : langs) validate_lang_code(code);
  validate_lang_code(target_lang);
  std::set<LangCode> distinct(langs.begin(), langs.end());
  if (distinct.size() != langs.size()) {
    throw ValidationError("duplicate language code in multi-parallel corpus");
  }
  if (distinct.count(target_lang) != 0) {
    throw ValidationError("target language '" + target_lang +
                          "' also listed as a source language");
  }
  const std::size_t n = targets.size();
  for (std::size_t k = 0; k < langs.size(); ++k) {
    if (sources[k].size() != n) {
      throw AlignmentError("language '" + langs[k] + "' has " +
                           std::to_string(sources[k].size()) + " lines, target has " +
                           std::to_string(n));
    }
  }

  // Keep languages (and their sides) sorted for deterministic enumeration.
  std::vector<std::size_t> order(langs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return langs[a] < langs[b];
  });

  MultiParallelCorpus corpus;
  corpus.target_lang_ = std::move(target_lang);
  corpus.targets_ = std::move(targets);
  corpus.order_coherent_ = order_coherent;
  corpus.langs_.reserve(langs.size());
  corpus.sources_.reserve(langs.size());
  for (std::size_t i : order) {
    corpus.langs_.push_back(std::move(langs[i]));
    corpus.sources_.push_back(std::move(sources[i]));
  }
  return corpus;
}

ParallelCorpus load_parallel_tsv(const std::filesystem::path& path,
                                 const LangCode& lang, bool order_coherent) {
  validate_lang_code(lang);
  bool lang_column = false;
  const auto rows = parse_tsv(path, &lang_column);
  ParallelCorpus corpus;
  corpus.lang = lang;
  corpus.order_coherent = order_coherent;
  corpus.lang_column = lang_column;
  corpus.pairs.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (lang_column && rows[i].lang != lang) {
      throw ValidationError(path.string() + ":" + std::to_string(i + 1) +
                            ": row language '" + rows[i].lang +
                            "' does not match corpus language '" + lang + "'");
    }
    corpus.pairs.push_back({rows[i].src, rows[i].tgt});
  }
  return corpus;
}

ParallelCorpus load_parallel_paired(const std::filesystem::path& src_path,
                                    const std::filesystem::path& tgt_path,
                                    const LangCode& lang, bool order_coherent) {
  validate_lang_code(lang);
  const auto src_lines = read_lines(src_path);
  const auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw AlignmentError("paired files are not line-aligned: " +
                         src_path.string() + " has " +
                         std::to_string(src_lines.size()) + " lines, " +
                         tgt_path.string() + " has " +
                         std::to_string(tgt_lines.size()));
  }
  ParallelCorpus corpus;
  corpus.lang = lang;
  corpus.order_coherent = order_coherent;
  corpus.pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    corpus.pairs.push_back(
        {normalize_sentence(src_lines[i],
                            src_path.string() + ":" + std::to_string(i + 1)),
         normalize_sentence(tgt_lines[i],
                            tgt_path.string() + ":" + std::to_string(i + 1))});
  }
  return corpus;
}

std::vector<ParallelCorpus> load_parallel_groups(
    const std::filesystem::path& path, const LangCode& default_lang,
    bool order_coherent) {
  validate_lang_code(default_lang);
  bool lang_column = false;
  const auto rows = parse_tsv(path, &lang_column);
  std::map<LangCode, ParallelCorpus> groups;
  for (const auto& row : rows) {
    const LangCode& lang = lang_column ? row.lang : default_lang;
    auto [it, inserted] = groups.try_emplace(lang);
    if (inserted) {
      it->second.lang = lang;
      it->second.order_coherent = order_coherent;
      it->second.lang_column = lang_column;
    }
    it->second.pairs.push_back({row.src, row.tgt});
  }
  std::vector<ParallelCorpus> corpora;
  corpora.reserve(groups.size());
  for (auto& [lang, corpus] : groups) corpora.push_back(std::move(corpus));
  return corpora;
}

MultiParallelCorpus load_multiparallel(const std::filesystem::path& dir,
                                       const LangCode& target_lang,
                                       bool order_coherent) {
  validate_lang_code(target_lang);
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<LangCode> langs;
  std::vector<std::vector<std::string>> sources;
  std::vector<std::string> targets;
  bool found_target = false;
  auto load_side = [](const std::filesystem::path& file) {
    auto lines = read_lines(file);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      lines[i] = normalize_sentence(lines[i],
                                    file.string() + ":" + std::to_string(i + 1));
    }
    return lines;
  };
  for (const auto& file : files) {
    const LangCode code = file.stem().string();
    validate_lang_code(code);
    if (code == target_lang) {
      targets = load_side(file);
      found_target = true;
    } else {
      langs.push_back(code);
      sources.push_back(load_side(file));
    }
  }
  if (!found_target) {
    throw ConfigError("missing target-language file '" + target_lang +
                      ".txt' in " + dir.string());
  }
  if (langs.empty()) {
    throw ConfigError("multi-parallel corpus needs at least one source language "
                      "(only the target file found in " + dir.string() + ")");
  }
  for (std::size_t k = 0; k < langs.size(); ++k) {
    if (sources[k].size() != targets.size()) {
      throw AlignmentError(dir.string() + "/" + langs[k] + ".txt has " +
                           std::to_string(sources[k].size()) + " lines, " +
                           target_lang + ".txt has " +
                           std::to_string(targets.size()));
    }
  }
  return MultiParallelCorpus::create(std::move(langs), target_lang,
                                     std::move(sources), std::move(targets),
                                     order_coherent);
}

std::string to_tsv(const ParallelCorpus& corpus) {
  std::string out;
  for (const auto& pair : corpus.pairs) {
    out += pair.src;
    out += '\t';
    out += pair.tgt;
    if (corpus.lang_column) {
      out += '\t';
      out += corpus.lang;
    }
    out += '\n';
  }
  return out;
}

void write_parallel_tsv(const ParallelCorpus& corpus,
                        const std::filesystem::path& path) {
  atomic_write(path, to_tsv(corpus));
}

CorpusStats stats(const ParallelCorpus& corpus) {
  CorpusStats s;
  s.segments = corpus.pairs.size();
  for (const auto& pair : corpus.pairs) {
    s.src_tokens += count_tokens(pair.src);
    s.tgt_tokens += count_tokens(pair.tgt);
  }
  return s;
}

CorpusStats stats(const MultiParallelCorpus& corpus) {
  CorpusStats s;
  for (const auto& [lang, lang_stats] : per_language_stats(corpus)) {
    s += lang_stats;
  }
  return s;
}

std::vector<std::pair<LangCode, CorpusStats>> per_language_stats(
    const MultiParallelCorpus& corpus) {
  std::uint64_t target_tokens = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    target_tokens += count_tokens(corpus.target(i));
  }
  std::vector<std::pair<LangCode, CorpusStats>> out;
  out.reserve(corpus.num_langs());
  for (std::size_t k = 0; k < corpus.num_langs(); ++k) {
    CorpusStats s;
    s.segments = corpus.size();
    s.tgt_tokens = target_tokens;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      s.src_tokens += count_tokens(corpus.source(k, i));
    }
    out.emplace_back(corpus.langs()[k], s);
  }
  return out;
}

}  // namespace cskit
