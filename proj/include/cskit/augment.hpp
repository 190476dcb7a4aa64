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

#ifndef CSKIT_AUGMENT_HPP
#define CSKIT_AUGMENT_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cskit/corpus.hpp"
#include "cskit/rng.hpp"
#include "cskit/segment.hpp"

namespace cskit {

// Token types available to the replacement noise stage. Kept sorted and
// unique so index -> type is deterministic.
struct Vocabulary {
  enum class Side { kSource, kTarget };
  std::vector<std::string> types;
  Side side = Side::kSource;
};

Vocabulary build_vocabulary(std::span<const ParallelCorpus> corpora,
                            Vocabulary::Side side);
Vocabulary load_vocabulary(const std::filesystem::path& path,
                           Vocabulary::Side side);

struct NoiseParams {
  double r = 0.1;  // noise ratio in [0, 1]
  std::uint64_t seed = 0;
  const Vocabulary* vocab = nullptr;  // required when the replace stage fires
};

struct AugmentSpec {
  std::uint64_t budget = 1;  // exact output segment count
  std::uint64_t seed = 0;
  std::string join = " ";
  double noise_r = 0.1;               // noise kinds
  const Vocabulary* vocab = nullptr;  // noise kinds; default built from input
  int max_joins = 2;                  // concatenation kinds, in [2, 4]
  LangCode target_lang = "en";        // metadata tag for DenoiseTgt sources
};

// Concatenate random same-language pairs (distinct indices).
std::vector<GeneratedSegment> cat_sl(std::span<const ParallelCorpus> corpora,
                                     const AugmentSpec& spec);
// Concatenate random sentences with no language constraint.
std::vector<GeneratedSegment> cat_xl(std::span<const ParallelCorpus> corpora,
                                     const AugmentSpec& spec);
// Repeat one sentence and concatenate it with itself.
std::vector<GeneratedSegment> cat_repeat(std::span<const ParallelCorpus> corpora,
                                         const AugmentSpec& spec);
// noise(y; r) -> y: noised target as source, clean target kept.
std::vector<GeneratedSegment> denoise_tgt(std::span<const ParallelCorpus> corpora,
                                          const AugmentSpec& spec);
// noise(x; r) -> y: noised source, clean target kept.
std::vector<GeneratedSegment> noisy_src(std::span<const ParallelCorpus> corpora,
                                        const AugmentSpec& spec);

// Three-stage pipeline: drop round(r*n) positions, replace round(r*n')
// positions with uniform vocabulary samples, then displace round(r*n'')
// tokens to uniform random positions. Counts are recomputed per stage and
// positions are chosen without replacement within a stage. round() is
// half-up. All choices come from params.seed.
std::vector<std::string> apply_noise(std::vector<std::string> tokens,
                                     const NoiseParams& params,
                                     NoiseOps* ops = nullptr);

// Uniform sample without replacement when the pool exceeds the budget;
// otherwise the pool unchanged. Deterministic under seed.
std::vector<GeneratedSegment> enforce_budget(std::vector<GeneratedSegment> pool,
                                             std::uint64_t budget,
                                             std::uint64_t seed);

namespace detail {

// Noise stages with explicit positions, for pinning the forced examples.
// Positions must be sorted ascending and in range.
std::vector<std::string> drop_at(std::vector<std::string> tokens,
                                 std::span<const std::size_t> positions);
std::vector<std::string> replace_at(std::vector<std::string> tokens,
                                    std::span<const std::size_t> positions,
                                    const Vocabulary& vocab, Rng& rng,
                                    NoiseOps* ops = nullptr);
std::vector<std::string> displace(std::vector<std::string> tokens,
                                  std::span<const std::size_t> positions,
                                  Rng& rng, NoiseOps* ops = nullptr);

// Distinct positions in [0, n), sorted ascending.
std::vector<std::size_t> pick_positions(Rng& rng, std::size_t n,
                                        std::size_t count);

std::size_t round_half_up(double x);

// Equation-level emitters for tests.
GeneratedSegment emit_cat(std::span<const ParallelCorpus> corpora,
                          SegmentKind kind,
                          std::span<const std::pair<std::size_t, std::size_t>>
                              draws,  // (corpus idx, pair idx) per slot
                          std::string_view join);

}  // namespace detail

}  // namespace cskit

#endif  // CSKIT_AUGMENT_HPP
