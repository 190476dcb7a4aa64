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

#ifndef CSKIT_CORPUS_HPP
#define CSKIT_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cskit {

// Short lowercase ASCII alphanumeric identifier ("bn", "hi", "en").
using LangCode = std::string;

// Throws ValidationError unless non-empty lowercase ASCII alphanumeric.
void validate_lang_code(const LangCode& code);

// Strips the line and enforces the sentence invariants (non-empty, no
// interior newline). `where` names the file/line for error messages.
std::string normalize_sentence(std::string_view line, const std::string& where);

struct SentencePair {
  std::string src;
  std::string tgt;
  bool operator==(const SentencePair&) const = default;
};

// One source language, line-aligned with its target translations.
struct ParallelCorpus {
  LangCode lang;
  std::vector<SentencePair> pairs;
  bool order_coherent = false;
  // True when the corpus came from a TSV with an explicit language column;
  // serialization writes the column back so round-trips are byte-identical.
  bool lang_column = false;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

// K line-aligned source-language sides plus one target side. All sides have
// identical length; langs are distinct and kept sorted.
class MultiParallelCorpus {
 public:
  // Validates lengths, K >= 1, distinct valid lang codes. `sources` must be
  // ordered like `langs`.
  static MultiParallelCorpus create(std::vector<LangCode> langs,
                                    LangCode target_lang,
                                    std::vector<std::vector<std::string>> sources,
                                    std::vector<std::string> targets,
                                    bool order_coherent);

  const std::vector<LangCode>& langs() const { return langs_; }
  const LangCode& target_lang() const { return target_lang_; }
  std::size_t num_langs() const { return langs_.size(); }
  std::size_t size() const { return targets_.size(); }
  bool order_coherent() const { return order_coherent_; }

  const std::string& source(std::size_t lang_idx, std::size_t i) const {
    return sources_[lang_idx][i];
  }
  const std::string& target(std::size_t i) const { return targets_[i]; }
  const std::vector<std::string>& source_side(std::size_t lang_idx) const {
    return sources_[lang_idx];
  }
  const std::vector<std::string>& target_side() const { return targets_; }

 private:
  MultiParallelCorpus() = default;

  std::vector<LangCode> langs_;
  LangCode target_lang_;
  std::vector<std::vector<std::string>> sources_;  // [K][n]
  std::vector<std::string> targets_;               // [n]
  bool order_coherent_ = false;
};

// Segment and whitespace-token counts, before any subword processing.
struct CorpusStats {
  std::uint64_t segments = 0;
  std::uint64_t src_tokens = 0;
  std::uint64_t tgt_tokens = 0;

  CorpusStats& operator+=(const CorpusStats& other) {
    segments += other.segments;
    src_tokens += other.src_tokens;
    tgt_tokens += other.tgt_tokens;
    return *this;
  }
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) {
    a += b;
    return a;
  }
  bool operator==(const CorpusStats&) const = default;
};

// Loading. TSV rows are `src<TAB>tgt[<TAB>lang]`, UTF-8, LF, no header.
ParallelCorpus load_parallel_tsv(const std::filesystem::path& path,
                                 const LangCode& lang, bool order_coherent);
ParallelCorpus load_parallel_paired(const std::filesystem::path& src_path,
                                    const std::filesystem::path& tgt_path,
                                    const LangCode& lang, bool order_coherent);

// Splits a mixed-language TSV into one corpus per language (sorted by code).
// Rows without a language column fall back to `default_lang`.
std::vector<ParallelCorpus> load_parallel_groups(
    const std::filesystem::path& path, const LangCode& default_lang,
    bool order_coherent);

// Directory of line-aligned `<lang>.txt` files; `<target_lang>.txt` is the
// target side, every other `.txt` file is a source language.
MultiParallelCorpus load_multiparallel(const std::filesystem::path& dir,
                                       const LangCode& target_lang,
                                       bool order_coherent = true);

std::string to_tsv(const ParallelCorpus& corpus);
void write_parallel_tsv(const ParallelCorpus& corpus,
                        const std::filesystem::path& path);

CorpusStats stats(const ParallelCorpus& corpus);
// Union-of-languages view: one segment per (language, line), target tokens
// counted once per language.
CorpusStats stats(const MultiParallelCorpus& corpus);
std::vector<std::pair<LangCode, CorpusStats>> per_language_stats(
    const MultiParallelCorpus& corpus);

}  // namespace cskit

#endif  // CSKIT_CORPUS_HPP
