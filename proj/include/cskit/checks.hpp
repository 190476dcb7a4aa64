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

#ifndef CSKIT_CHECKS_HPP
#define CSKIT_CHECKS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cskit/corpus.hpp"
#include "cskit/segment.hpp"

namespace cskit {

enum class CtlDirection { kFwd, kRev, kMixed };

// How C-XL picks its ordered language pair. Default: uniform over ordered
// pairs (k, m) with k != m. A forced pair pins every segment to one pair,
// mainly for tests and targeted probes.
struct LangPairPolicy {
  std::optional<std::pair<LangCode, LangCode>> forced;
};

struct CheckSpec {
  // Target segment count; nullopt = ALL (every candidate, enumerable kinds
  // only). Output size is min(count, candidate pool size).
  std::optional<std::uint64_t> count;
  std::uint64_t seed = 0;
  std::string join = " ";
  LangPairPolicy pair_policy{};
};

// Consecutive source + target-language sentence (both directions).
// kMixed samples uniformly from the union of the FWD and REV pools.
std::vector<GeneratedSegment> gen_ctl(const MultiParallelCorpus& corpus,
                                      CtlDirection direction,
                                      const CheckSpec& spec);

// Consecutive same-language concatenation.
std::vector<GeneratedSegment> gen_csl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec);

// Consecutive cross-language concatenation, languages always distinct.
std::vector<GeneratedSegment> gen_cxl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec);

// Random-position concatenation across any languages; needs neither
// multi-parallelism beyond per-language pairing nor order coherency.
std::vector<GeneratedSegment> gen_rxl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec);

// Up-to-k consecutive same-language concatenation; per segment the join
// count is uniform over [1, k_max].
std::vector<GeneratedSegment> gen_cksl(const MultiParallelCorpus& corpus,
                                       int k_max, const CheckSpec& spec);

namespace detail {

// Single-candidate emitters, exposed so the equation-level examples can be
// pinned directly in tests.
GeneratedSegment emit_ctl(const MultiParallelCorpus& corpus, bool forward,
                          std::size_t lang_idx, std::size_t i,
                          std::string_view join);
GeneratedSegment emit_csl(const MultiParallelCorpus& corpus,
                          std::size_t lang_idx, std::size_t i,
                          std::string_view join);
GeneratedSegment emit_cxl(const MultiParallelCorpus& corpus, std::size_t k,
                          std::size_t m, std::size_t i, std::string_view join);
GeneratedSegment emit_rxl(const MultiParallelCorpus& corpus, std::size_t k,
                          std::size_t i, std::size_t m, std::size_t j,
                          std::string_view join);
GeneratedSegment emit_cksl(const MultiParallelCorpus& corpus,
                           std::size_t lang_idx, std::size_t start,
                           std::size_t joins, std::string_view join);

}  // namespace detail

}  // namespace cskit

#endif  // CSKIT_CHECKS_HPP
