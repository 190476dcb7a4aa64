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

#ifndef CSKIT_SEGMENT_HPP
#define CSKIT_SEGMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cskit/corpus.hpp"

namespace cskit {

enum class SegmentKind {
  kCtlFwd,
  kCtlRev,
  kCsl,
  kCxl,
  kRxl,
  kCksl,
  kCatSl,
  kCatXl,
  kCatRepeat,
  kDenoiseTgt,
  kNoisySrc,
};

std::string_view kind_name(SegmentKind kind);
SegmentKind kind_from_name(std::string_view name);
bool is_check_kind(SegmentKind kind);
bool is_augment_kind(SegmentKind kind);

// Log of the noise operations applied to one segment, replayable in order:
// drop all `dropped` positions, assign `replaced`, then remove all
// `displaced[i].first` positions and insert the removed tokens back at
// `displaced[i].second` in list order.
struct NoiseOps {
  std::vector<std::size_t> dropped;
  std::vector<std::pair<std::size_t, std::string>> replaced;
  std::vector<std::pair<std::size_t, std::size_t>> displaced;

  bool empty() const {
    return dropped.empty() && replaced.empty() && displaced.empty();
  }
};

// One generated source/target pair with provenance and join bookkeeping.
// Join offsets are byte offsets of the points where each join string starts
// inside the text, strictly increasing and interior.
struct GeneratedSegment {
  std::string id;  // <kind>-<seed>-<ordinal>
  SegmentKind kind = SegmentKind::kCsl;
  std::string src_text;
  std::string tgt_text;
  std::vector<LangCode> src_langs;  // one per joined source sentence
  std::vector<std::size_t> src_joins;
  std::vector<std::size_t> tgt_joins;
  std::uint64_t seed = 0;  // seed used for this record's random choices
  std::optional<double> noise_r;
  std::optional<NoiseOps> noise_ops;
};

// Joins parts with `join` and records the offset where each join starts.
std::string join_with_offsets(std::span<const std::string> parts,
                              std::string_view join,
                              std::vector<std::size_t>* offsets);

// Inverse of join_with_offsets given the join length.
std::vector<std::string> split_at_offsets(std::string_view text,
                                          std::span<const std::size_t> offsets,
                                          std::size_t join_len);

std::string make_segment_id(SegmentKind kind, std::uint64_t seed,
                            std::size_t ordinal);

std::string segment_to_jsonl(const GeneratedSegment& segment);
GeneratedSegment segment_from_jsonl(std::string_view line);

void write_segments_jsonl(const std::filesystem::path& path,
                          std::span<const GeneratedSegment> segments);
// Plain-text pair for scorer interoperability, one segment per line.
void write_segments_text(const std::filesystem::path& src_path,
                         const std::filesystem::path& tgt_path,
                         std::span<const GeneratedSegment> segments);
std::vector<GeneratedSegment> read_segments_jsonl(
    const std::filesystem::path& path);

}  // namespace cskit

#endif  // CSKIT_SEGMENT_HPP
