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

#include "cskit/checks.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "cskit/error.hpp"
#include "cskit/rng.hpp"

namespace cskit {

namespace {

void require_coherent(const MultiParallelCorpus& corpus, const char* check) {
  if (!corpus.order_coherent()) {
    throw PreconditionError(std::string(check) +
                            " requires coherent sentence order");
  }
}

void require_consecutive(const MultiParallelCorpus& corpus, const char* check) {
  if (corpus.size() < 2) {
    throw PreconditionError(std::string(check) + " needs at least 2 sentences, "
                            "corpus has " + std::to_string(corpus.size()) +
                            "; no consecutive pair exists");
  }
}

// Uniform sample without replacement from [0, pool), returned ascending so
// output follows corpus order. count == nullopt keeps every candidate.
std::vector<std::size_t> select_candidates(std::uint64_t pool,
                                           std::optional<std::uint64_t> count,
                                           std::uint64_t seed) {
  if (!count || *count >= pool) {
    std::vector<std::size_t> all(pool);
    for (std::size_t i = 0; i < pool; ++i) all[i] = i;
    return all;
  }
  Rng rng(seed);
  auto picked = sample_indices(pool, *count, rng);
  std::sort(picked.begin(), picked.end());
  return picked;
}

// IDs carry the run seed so records stay cross-referenceable between runs
// even where per-record seeds are derived.
template <typename MakeFn>
std::vector<GeneratedSegment> materialize(std::size_t n, std::uint64_t run_seed,
                                          MakeFn make) {
  std::vector<GeneratedSegment> out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < static_cast<std::int64_t>(n); ++o) {
    out[o] = make(static_cast<std::size_t>(o));
    out[o].id = make_segment_id(out[o].kind, run_seed,
                                static_cast<std::size_t>(o));
  }
  return out;
}

GeneratedSegment make_joined(SegmentKind kind,
                             const std::vector<std::string>& src_parts,
                             const std::vector<std::string>& tgt_parts,
                             std::vector<LangCode> langs,
                             std::string_view join) {
  GeneratedSegment s;
  s.kind = kind;
  s.src_text = join_with_offsets(src_parts, join, &s.src_joins);
  s.tgt_text = join_with_offsets(tgt_parts, join, &s.tgt_joins);
  s.src_langs = std::move(langs);
  return s;
}

}  // namespace

namespace detail {

GeneratedSegment emit_ctl(const MultiParallelCorpus& corpus, bool forward,
                          std::size_t lang_idx, std::size_t i,
                          std::string_view join) {
  const LangCode& lang = corpus.langs()[lang_idx];
  const LangCode& tgt_lang = corpus.target_lang();
  if (forward) {
    return make_joined(SegmentKind::kCtlFwd,
                       {corpus.source(lang_idx, i), corpus.target(i + 1)},
                       {corpus.target(i), corpus.target(i + 1)},
                       {lang, tgt_lang}, join);
  }
  return make_joined(SegmentKind::kCtlRev,
                     {corpus.target(i), corpus.source(lang_idx, i + 1)},
                     {corpus.target(i), corpus.target(i + 1)},
                     {tgt_lang, lang}, join);
}

GeneratedSegment emit_csl(const MultiParallelCorpus& corpus,
                          std::size_t lang_idx, std::size_t i,
                          std::string_view join) {
  const LangCode& lang = corpus.langs()[lang_idx];
  return make_joined(SegmentKind::kCsl,
                     {corpus.source(lang_idx, i), corpus.source(lang_idx, i + 1)},
                     {corpus.target(i), corpus.target(i + 1)}, {lang, lang},
                     join);
}

GeneratedSegment emit_cxl(const MultiParallelCorpus& corpus, std::size_t k,
                          std::size_t m, std::size_t i, std::string_view join) {
  return make_joined(SegmentKind::kCxl,
                     {corpus.source(k, i), corpus.source(m, i + 1)},
                     {corpus.target(i), corpus.target(i + 1)},
                     {corpus.langs()[k], corpus.langs()[m]}, join);
}

GeneratedSegment emit_rxl(const MultiParallelCorpus& corpus, std::size_t k,
                          std::size_t i, std::size_t m, std::size_t j,
                          std::string_view join) {
  return make_joined(SegmentKind::kRxl,
                     {corpus.source(k, i), corpus.source(m, j)},
                     {corpus.target(i), corpus.target(j)},
                     {corpus.langs()[k], corpus.langs()[m]}, join);
}

GeneratedSegment emit_cksl(const MultiParallelCorpus& corpus,
                           std::size_t lang_idx, std::size_t start,
                           std::size_t joins, std::string_view join) {
  std::vector<std::string> src_parts;
  std::vector<std::string> tgt_parts;
  std::vector<LangCode> langs;
  for (std::size_t d = 0; d < joins; ++d) {
    src_parts.push_back(corpus.source(lang_idx, start + d));
    tgt_parts.push_back(corpus.target(start + d));
    langs.push_back(corpus.langs()[lang_idx]);
  }
  return make_joined(SegmentKind::kCksl, src_parts, tgt_parts,
                     std::move(langs), join);
}

}  // namespace detail

std::vector<GeneratedSegment> gen_ctl(const MultiParallelCorpus& corpus,
                                      CtlDirection direction,
                                      const CheckSpec& spec) {
  require_coherent(corpus, "C-TL");
  require_consecutive(corpus, "C-TL");
  const std::uint64_t per_direction =
      corpus.num_langs() * (corpus.size() - 1);
  const std::uint64_t pool = direction == CtlDirection::kMixed
                                 ? 2 * per_direction
                                 : per_direction;
  const auto picked = select_candidates(pool, spec.count, spec.seed);
  const std::size_t n_minus_1 = corpus.size() - 1;
  return materialize(picked.size(), spec.seed, [&](std::size_t o) {
    std::uint64_t c = picked[o];
    bool forward = direction != CtlDirection::kRev;
    if (direction == CtlDirection::kMixed && c >= per_direction) {
      forward = false;
      c -= per_direction;
    }
    const std::size_t lang_idx = c / n_minus_1;
    const std::size_t i = c % n_minus_1;
    auto segment = detail::emit_ctl(corpus, forward, lang_idx, i, spec.join);
    segment.seed = spec.seed;
    return segment;
  });
}

std::vector<GeneratedSegment> gen_csl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec) {
  require_coherent(corpus, "C-SL");
  require_consecutive(corpus, "C-SL");
  const std::size_t n_minus_1 = corpus.size() - 1;
  const std::uint64_t pool = corpus.num_langs() * n_minus_1;
  const auto picked = select_candidates(pool, spec.count, spec.seed);
  return materialize(picked.size(), spec.seed, [&](std::size_t o) {
    const std::size_t lang_idx = picked[o] / n_minus_1;
    const std::size_t i = picked[o] % n_minus_1;
    auto segment = detail::emit_csl(corpus, lang_idx, i, spec.join);
    segment.seed = spec.seed;
    return segment;
  });
}

std::vector<GeneratedSegment> gen_cxl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec) {
  require_coherent(corpus, "C-XL");
  require_consecutive(corpus, "C-XL");
  const std::size_t K = corpus.num_langs();
  const std::size_t n_minus_1 = corpus.size() - 1;

  if (spec.pair_policy.forced) {
    const auto& [first, second] = *spec.pair_policy.forced;
    if (first == second) {
      throw ParamError("C-XL language pair must use two distinct languages");
    }
    const auto& langs = corpus.langs();
    auto index_of = [&](const LangCode& code) {
      const auto it = std::find(langs.begin(), langs.end(), code);
      if (it == langs.end()) {
        throw ParamError("language '" + code + "' not present in corpus");
      }
      return static_cast<std::size_t>(it - langs.begin());
    };
    const std::size_t k = index_of(first);
    const std::size_t m = index_of(second);
    const auto picked = select_candidates(n_minus_1, spec.count, spec.seed);
    return materialize(picked.size(), spec.seed, [&, k, m](std::size_t o) {
      auto segment = detail::emit_cxl(corpus, k, m, picked[o], spec.join);
      segment.seed = spec.seed;
      return segment;
    });
  }

  if (K < 2) {
    throw PreconditionError("C-XL requires at least two source languages");
  }
  // Candidates are (index, ordered language pair) triples, index-major.
  const std::uint64_t pairs = static_cast<std::uint64_t>(K) * (K - 1);
  const std::uint64_t pool = n_minus_1 * pairs;
  const auto picked = select_candidates(pool, spec.count, spec.seed);
  return materialize(picked.size(), spec.seed, [&](std::size_t o) {
    const std::uint64_t c = picked[o];
    const std::size_t i = static_cast<std::size_t>(c / pairs);
    const std::uint64_t pair_idx = c % pairs;
    const std::size_t k = static_cast<std::size_t>(pair_idx / (K - 1));
    std::size_t m = static_cast<std::size_t>(pair_idx % (K - 1));
    if (m >= k) ++m;  // skip the diagonal
    auto segment = detail::emit_cxl(corpus, k, m, i, spec.join);
    segment.seed = spec.seed;
    return segment;
  });
}

std::vector<GeneratedSegment> gen_rxl(const MultiParallelCorpus& corpus,
                                      const CheckSpec& spec) {
  require_consecutive(corpus, "R-XL");
  if (!spec.count) {
    throw ParamError("R-XL draws random positions and has no finite candidate "
                     "enumeration; an explicit count is required");
  }
  const std::uint64_t slots =
      static_cast<std::uint64_t>(corpus.num_langs()) * corpus.size();
  const unsigned __int128 space =
      static_cast<unsigned __int128>(slots) * slots - slots;
  if (static_cast<unsigned __int128>(*spec.count) > space) {
    throw ParamError("R-XL count " + std::to_string(*spec.count) +
                     " exceeds the " +
                     std::to_string(static_cast<std::uint64_t>(space)) +
                     " distinct candidates of this corpus");
  }
  const std::size_t n = corpus.size();
  return materialize(*spec.count, spec.seed, [&](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const std::uint64_t a = rng.below(slots);
    std::uint64_t b = rng.below(slots);
    while (b == a) b = rng.below(slots);  // same sentence in the same language
    auto segment = detail::emit_rxl(corpus, a / n, a % n, b / n, b % n,
                                    spec.join);
    segment.seed = record_seed;
    return segment;
  });
}

std::vector<GeneratedSegment> gen_cksl(const MultiParallelCorpus& corpus,
                                       int k_max, const CheckSpec& spec) {
  if (k_max < 2) {
    throw ParamError("max joins must be at least 2, got " +
                     std::to_string(k_max));
  }
  require_coherent(corpus, "C-kSL");
  if (corpus.size() < static_cast<std::size_t>(k_max)) {
    throw PreconditionError("C-kSL with max joins " + std::to_string(k_max) +
                            " needs at least that many sentences, corpus has " +
                            std::to_string(corpus.size()));
  }
  if (!spec.count) {
    throw ParamError("C-kSL draws join counts at random and has no finite "
                     "candidate enumeration; an explicit count is required");
  }
  const std::size_t K = corpus.num_langs();
  const std::size_t n = corpus.size();
  return materialize(*spec.count, spec.seed, [&](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const std::size_t joins = 1 + static_cast<std::size_t>(
                                      rng.below(static_cast<std::uint64_t>(k_max)));
    const std::size_t lang_idx = static_cast<std::size_t>(rng.below(K));
    const std::size_t start =
        static_cast<std::size_t>(rng.below(n - joins + 1));
    auto segment = detail::emit_cksl(corpus, lang_idx, start, joins, spec.join);
    segment.seed = record_seed;
    return segment;
  });
}

}  // namespace cskit
