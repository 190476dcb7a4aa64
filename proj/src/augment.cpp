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

#include "cskit/augment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cskit/error.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

// Flat view over a list of corpora: a slot is one (corpus, pair) position,
// so pooled draws weight languages by their segment counts.
struct Pool {
  std::span<const ParallelCorpus> corpora;
  std::vector<std::uint64_t> cumulative;  // exclusive prefix sums
  std::uint64_t total = 0;

  explicit Pool(std::span<const ParallelCorpus> c) : corpora(c) {
    cumulative.reserve(c.size());
    for (const auto& corpus : c) {
      cumulative.push_back(total);
      total += corpus.size();
    }
  }

  std::pair<std::size_t, std::size_t> slot(std::uint64_t flat) const {
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), flat);
    const std::size_t ci = static_cast<std::size_t>(it - cumulative.begin()) - 1;
    return {ci, static_cast<std::size_t>(flat - cumulative[ci])};
  }

  std::pair<std::size_t, std::size_t> draw(Rng& rng) const {
    return slot(rng.below(total));
  }
};

Pool make_pool(std::span<const ParallelCorpus> corpora, const char* what) {
  if (corpora.empty()) {
    throw Error(std::string(what) + " requires at least one input corpus");
  }
  Pool pool(corpora);
  if (pool.total == 0) {
    throw Error(std::string(what) + " requires a non-empty corpus");
  }
  return pool;
}

void validate_spec(const AugmentSpec& spec) {
  if (spec.budget < 1) {
    throw ParamError("budget must be at least 1");
  }
  if (spec.max_joins < 2 || spec.max_joins > 4) {
    throw ParamError("max joins must be in [2, 4], got " +
                     std::to_string(spec.max_joins));
  }
  if (spec.noise_r < 0.0 || spec.noise_r > 1.0) {
    throw ParamError("noise ratio must be in [0, 1], got " +
                     std::to_string(spec.noise_r));
  }
}

template <typename MakeFn>
std::vector<GeneratedSegment> materialize(const AugmentSpec& spec, MakeFn make) {
  std::vector<GeneratedSegment> out(spec.budget);
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < static_cast<std::int64_t>(spec.budget); ++o) {
    out[o] = make(static_cast<std::size_t>(o));
    out[o].id = make_segment_id(out[o].kind, spec.seed,
                                static_cast<std::size_t>(o));
  }
  return out;
}

// Segments to concatenate per output; 2 under the default spec, uniform in
// [2, max_joins] for the multi-join training sets.
std::size_t draw_join_count(Rng& rng, int max_joins) {
  if (max_joins == 2) return 2;
  return 2 + static_cast<std::size_t>(
                 rng.below(static_cast<std::uint64_t>(max_joins - 1)));
}

}  // namespace

namespace detail {

std::size_t round_half_up(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

std::vector<std::size_t> pick_positions(Rng& rng, std::size_t n,
                                        std::size_t count) {
  auto positions = sample_indices(n, count, rng);
  std::sort(positions.begin(), positions.end());
  return positions;
}

std::vector<std::string> drop_at(std::vector<std::string> tokens,
                                 std::span<const std::size_t> positions) {
  std::vector<std::string> out;
  out.reserve(tokens.size() - positions.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (next < positions.size() && positions[next] == i) {
      ++next;
      continue;
    }
    out.push_back(std::move(tokens[i]));
  }
  return out;
}

std::vector<std::string> replace_at(std::vector<std::string> tokens,
                                    std::span<const std::size_t> positions,
                                    const Vocabulary& vocab, Rng& rng,
                                    NoiseOps* ops) {
  for (std::size_t pos : positions) {
    std::string type = vocab.types[rng.below(vocab.types.size())];
    if (ops != nullptr) ops->replaced.emplace_back(pos, type);
    tokens[pos] = std::move(type);
  }
  return tokens;
}

std::vector<std::string> displace(std::vector<std::string> tokens,
                                  std::span<const std::size_t> positions,
                                  Rng& rng, NoiseOps* ops) {
  std::vector<std::string> moving;
  std::vector<std::string> base;
  moving.reserve(positions.size());
  base.reserve(tokens.size() - positions.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (next < positions.size() && positions[next] == i) {
      moving.push_back(std::move(tokens[i]));
      ++next;
    } else {
      base.push_back(std::move(tokens[i]));
    }
  }
  for (std::size_t m = 0; m < moving.size(); ++m) {
    const std::size_t at = static_cast<std::size_t>(rng.below(base.size() + 1));
    if (ops != nullptr) ops->displaced.emplace_back(positions[m], at);
    base.insert(base.begin() + static_cast<std::ptrdiff_t>(at),
                std::move(moving[m]));
  }
  return base;
}

GeneratedSegment emit_cat(std::span<const ParallelCorpus> corpora,
                          SegmentKind kind,
                          std::span<const std::pair<std::size_t, std::size_t>>
                              draws,
                          std::string_view join) {
  GeneratedSegment s;
  s.kind = kind;
  std::vector<std::string> src_parts;
  std::vector<std::string> tgt_parts;
  for (const auto& [ci, pi] : draws) {
    const auto& pair = corpora[ci].pairs[pi];
    src_parts.push_back(pair.src);
    tgt_parts.push_back(pair.tgt);
    s.src_langs.push_back(corpora[ci].lang);
  }
  s.src_text = join_with_offsets(src_parts, join, &s.src_joins);
  s.tgt_text = join_with_offsets(tgt_parts, join, &s.tgt_joins);
  return s;
}

}  // namespace detail

Vocabulary build_vocabulary(std::span<const ParallelCorpus> corpora,
                            Vocabulary::Side side) {
  std::set<std::string> types;
  for (const auto& corpus : corpora) {
    for (const auto& pair : corpus.pairs) {
      const std::string& text =
          side == Vocabulary::Side::kSource ? pair.src : pair.tgt;
      for (auto& token : split_tokens(text)) {
        types.insert(std::move(token));
      }
    }
  }
  Vocabulary vocab;
  vocab.side = side;
  vocab.types.assign(types.begin(), types.end());
  return vocab;
}

Vocabulary load_vocabulary(const std::filesystem::path& path,
                           Vocabulary::Side side) {
  std::set<std::string> types;
  for (const auto& line : read_lines(path)) {
    const auto stripped = strip(line);
    if (!stripped.empty()) types.emplace(stripped);
  }
  Vocabulary vocab;
  vocab.side = side;
  vocab.types.assign(types.begin(), types.end());
  return vocab;
}

std::vector<std::string> apply_noise(std::vector<std::string> tokens,
                                     const NoiseParams& params, NoiseOps* ops) {
  if (params.r < 0.0 || params.r > 1.0) {
    throw ParamError("noise ratio must be in [0, 1], got " +
                     std::to_string(params.r));
  }
  Rng rng(params.seed);

  const std::size_t drop_count =
      detail::round_half_up(params.r * static_cast<double>(tokens.size()));
  if (drop_count > 0) {
    const auto positions =
        detail::pick_positions(rng, tokens.size(), drop_count);
    if (ops != nullptr) {
      ops->dropped.assign(positions.begin(), positions.end());
    }
    tokens = detail::drop_at(std::move(tokens), positions);
  }

  const std::size_t replace_count =
      detail::round_half_up(params.r * static_cast<double>(tokens.size()));
  if (replace_count > 0) {
    if (params.vocab == nullptr || params.vocab->types.empty()) {
      throw ValidationError(
          "replacement noise requires a non-empty vocabulary");
    }
    const auto positions =
        detail::pick_positions(rng, tokens.size(), replace_count);
    tokens = detail::replace_at(std::move(tokens), positions, *params.vocab,
                                rng, ops);
  }

  const std::size_t displace_count =
      detail::round_half_up(params.r * static_cast<double>(tokens.size()));
  if (displace_count > 0) {
    const auto positions =
        detail::pick_positions(rng, tokens.size(), displace_count);
    tokens = detail::displace(std::move(tokens), positions, rng, ops);
  }
  return tokens;
}

std::vector<GeneratedSegment> cat_sl(std::span<const ParallelCorpus> corpora,
                                     const AugmentSpec& spec) {
  validate_spec(spec);
  make_pool(corpora, "CatSL");  // shared emptiness checks
  for (const auto& corpus : corpora) {
    if (corpus.empty()) {
      throw Error("CatSL requires every contributing corpus to be non-empty "
                  "('" + corpus.lang + "' is empty)");
    }
  }
  // Same-language pairs need distinct indices, so draw the language among
  // those with enough segments, weighted by size.
  std::vector<std::size_t> eligible;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
  std::size_t largest = 0;
  for (std::size_t ci = 0; ci < corpora.size(); ++ci) {
    if (corpora[ci].size() >= 2) {
      eligible.push_back(ci);
      cumulative.push_back(total);
      total += corpora[ci].size();
      largest = std::max(largest, corpora[ci].size());
    }
  }
  if (eligible.empty()) {
    throw Error("CatSL requires a language with at least 2 segments");
  }
  return materialize(spec, [&](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const std::size_t joins =
        std::min(draw_join_count(rng, spec.max_joins), largest);
    std::size_t ci = 0;
    do {
      const std::uint64_t flat = rng.below(total);
      const auto it =
          std::upper_bound(cumulative.begin(), cumulative.end(), flat);
      ci = eligible[static_cast<std::size_t>(it - cumulative.begin()) - 1];
    } while (corpora[ci].size() < joins);
    std::vector<std::pair<std::size_t, std::size_t>> draws;
    std::vector<std::size_t> used;
    while (draws.size() < joins) {
      const auto pi = static_cast<std::size_t>(rng.below(corpora[ci].size()));
      if (std::find(used.begin(), used.end(), pi) != used.end()) continue;
      used.push_back(pi);
      draws.emplace_back(ci, pi);
    }
    auto segment = detail::emit_cat(corpora, SegmentKind::kCatSl, draws,
                                    spec.join);
    segment.seed = record_seed;
    return segment;
  });
}

std::vector<GeneratedSegment> cat_xl(std::span<const ParallelCorpus> corpora,
                                     const AugmentSpec& spec) {
  validate_spec(spec);
  const Pool pool = make_pool(corpora, "CatXL");
  return materialize(spec, [&](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const std::size_t joins = draw_join_count(rng, spec.max_joins);
    std::vector<std::pair<std::size_t, std::size_t>> draws;
    for (std::size_t d = 0; d < joins; ++d) {
      draws.push_back(pool.draw(rng));  // independent, no language constraint
    }
    auto segment = detail::emit_cat(corpora, SegmentKind::kCatXl, draws,
                                    spec.join);
    segment.seed = record_seed;
    return segment;
  });
}

std::vector<GeneratedSegment> cat_repeat(std::span<const ParallelCorpus> corpora,
                                         const AugmentSpec& spec) {
  validate_spec(spec);
  const Pool pool = make_pool(corpora, "CatRepeat");
  return materialize(spec, [&](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const std::size_t joins = draw_join_count(rng, spec.max_joins);
    const auto drawn = pool.draw(rng);
    const std::vector<std::pair<std::size_t, std::size_t>> draws(joins, drawn);
    auto segment = detail::emit_cat(corpora, SegmentKind::kCatRepeat, draws,
                                    spec.join);
    segment.seed = record_seed;
    return segment;
  });
}

namespace {

std::vector<GeneratedSegment> noise_generate(
    std::span<const ParallelCorpus> corpora, const AugmentSpec& spec,
    bool noise_target) {
  validate_spec(spec);
  const char* what = noise_target ? "DenoiseTgt" : "NoisySrc";
  const Pool pool = make_pool(corpora, what);
  Vocabulary built;
  const Vocabulary* vocab = spec.vocab;
  if (vocab == nullptr) {
    built = build_vocabulary(corpora, noise_target ? Vocabulary::Side::kTarget
                                                   : Vocabulary::Side::kSource);
    vocab = &built;
  }
  return materialize(spec, [&, vocab](std::size_t o) {
    const std::uint64_t record_seed = derive_seed(spec.seed, o);
    Rng rng(record_seed);
    const auto [ci, pi] = pool.draw(rng);
    const auto& pair = corpora[ci].pairs[pi];
    const std::string& original = noise_target ? pair.tgt : pair.src;

    NoiseParams params;
    params.r = spec.noise_r;
    params.seed = rng.next();
    params.vocab = vocab;
    NoiseOps ops;
    const auto noised = apply_noise(split_tokens(original), params, &ops);

    GeneratedSegment s;
    s.kind = noise_target ? SegmentKind::kDenoiseTgt : SegmentKind::kNoisySrc;
    // No-op noise keeps the original bytes (tokenizing and re-joining would
    // collapse interior whitespace).
    s.src_text = ops.empty() ? original : join_tokens(noised);
    s.tgt_text = pair.tgt;
    s.src_langs = {noise_target ? spec.target_lang : corpora[ci].lang};
    s.seed = record_seed;
    s.noise_r = spec.noise_r;
    s.noise_ops = std::move(ops);
    return s;
  });
}

}  // namespace

std::vector<GeneratedSegment> denoise_tgt(std::span<const ParallelCorpus> corpora,
                                          const AugmentSpec& spec) {
  return noise_generate(corpora, spec, /*noise_target=*/true);
}

std::vector<GeneratedSegment> noisy_src(std::span<const ParallelCorpus> corpora,
                                        const AugmentSpec& spec) {
  return noise_generate(corpora, spec, /*noise_target=*/false);
}

std::vector<GeneratedSegment> enforce_budget(std::vector<GeneratedSegment> pool,
                                             std::uint64_t budget,
                                             std::uint64_t seed) {
  if (pool.size() <= budget) return pool;
  Rng rng(seed);
  auto picked = sample_indices(pool.size(), budget, rng);
  std::sort(picked.begin(), picked.end());
  std::vector<GeneratedSegment> out;
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(std::move(pool[i]));
  return out;
}

}  // namespace cskit
