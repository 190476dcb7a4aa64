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

#include "cskit/segment.hpp"

#include <json.hpp>

#include "cskit/error.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

using njson = nlohmann::ordered_json;

constexpr std::pair<SegmentKind, std::string_view> kKindNames[] = {
    {SegmentKind::kCtlFwd, "ctl_fwd"},   {SegmentKind::kCtlRev, "ctl_rev"},
    {SegmentKind::kCsl, "csl"},          {SegmentKind::kCxl, "cxl"},
    {SegmentKind::kRxl, "rxl"},          {SegmentKind::kCksl, "cksl"},
    {SegmentKind::kCatSl, "catsl"},      {SegmentKind::kCatXl, "catxl"},
    {SegmentKind::kCatRepeat, "catrepeat"},
    {SegmentKind::kDenoiseTgt, "denoisetgt"},
    {SegmentKind::kNoisySrc, "noisysrc"},
};

}  // namespace

std::string_view kind_name(SegmentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  throw ParamError("unknown segment kind");
}

SegmentKind kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ParamError("unknown segment kind: '" + std::string(name) + "'");
}

bool is_check_kind(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kCtlFwd:
    case SegmentKind::kCtlRev:
    case SegmentKind::kCsl:
    case SegmentKind::kCxl:
    case SegmentKind::kRxl:
    case SegmentKind::kCksl:
      return true;
    default:
      return false;
  }
}

bool is_augment_kind(SegmentKind kind) { return !is_check_kind(kind); }

std::string join_with_offsets(std::span<const std::string> parts,
                              std::string_view join,
                              std::vector<std::size_t>* offsets) {
  std::string out;
  if (offsets != nullptr) offsets->clear();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      if (offsets != nullptr) offsets->push_back(out.size());
      out += join;
    }
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_at_offsets(std::string_view text,
                                          std::span<const std::size_t> offsets,
                                          std::size_t join_len) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (std::size_t offset : offsets) {
    if (offset < begin || offset + join_len > text.size()) {
      throw ValidationError("join offset " + std::to_string(offset) +
                            " out of range for text of length " +
                            std::to_string(text.size()));
    }
    parts.emplace_back(text.substr(begin, offset - begin));
    begin = offset + join_len;
  }
  parts.emplace_back(text.substr(begin));
  return parts;
}

std::string make_segment_id(SegmentKind kind, std::uint64_t seed,
                            std::size_t ordinal) {
  std::string id(kind_name(kind));
  id += '-';
  id += std::to_string(seed);
  id += '-';
  id += std::to_string(ordinal);
  return id;
}

std::string segment_to_jsonl(const GeneratedSegment& segment) {
  njson j;
  j["id"] = segment.id;
  j["kind"] = kind_name(segment.kind);
  j["src"] = segment.src_text;
  j["tgt"] = segment.tgt_text;
  j["src_langs"] = segment.src_langs;
  j["src_joins"] = segment.src_joins;
  j["tgt_joins"] = segment.tgt_joins;
  j["seed"] = segment.seed;
  if (segment.noise_r) {
    j["noise_r"] = *segment.noise_r;
    njson ops;
    const NoiseOps& no = segment.noise_ops ? *segment.noise_ops : NoiseOps{};
    ops["dropped"] = no.dropped;
    ops["replaced"] = njson::array();
    for (const auto& [pos, tok] : no.replaced) {
      ops["replaced"].push_back(njson::array({pos, tok}));
    }
    ops["displaced"] = njson::array();
    for (const auto& [from, to] : no.displaced) {
      ops["displaced"].push_back(njson::array({from, to}));
    }
    j["noise_ops"] = std::move(ops);
  }
  return j.dump();
}

GeneratedSegment segment_from_jsonl(std::string_view line) {
  njson j;
  try {
    j = njson::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad segment JSON: ") + e.what());
  }
  GeneratedSegment s;
  try {
    s.id = j.at("id").get<std::string>();
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    s.src_text = j.at("src").get<std::string>();
    s.tgt_text = j.at("tgt").get<std::string>();
    s.src_langs = j.at("src_langs").get<std::vector<LangCode>>();
    s.src_joins = j.at("src_joins").get<std::vector<std::size_t>>();
    s.tgt_joins = j.at("tgt_joins").get<std::vector<std::size_t>>();
    s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("noise_r")) {
      s.noise_r = j["noise_r"].get<double>();
      NoiseOps ops;
      const auto& jo = j.at("noise_ops");
      ops.dropped = jo.at("dropped").get<std::vector<std::size_t>>();
      for (const auto& r : jo.at("replaced")) {
        ops.replaced.emplace_back(r.at(0).get<std::size_t>(),
                                  r.at(1).get<std::string>());
      }
      for (const auto& d : jo.at("displaced")) {
        ops.displaced.emplace_back(d.at(0).get<std::size_t>(),
                                   d.at(1).get<std::size_t>());
      }
      s.noise_ops = std::move(ops);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad segment JSON: ") + e.what());
  }
  return s;
}

void write_segments_jsonl(const std::filesystem::path& path,
                          std::span<const GeneratedSegment> segments) {
  std::string out;
  for (const auto& segment : segments) {
    out += segment_to_jsonl(segment);
    out += '\n';
  }
  atomic_write(path, out);
}

void write_segments_text(const std::filesystem::path& src_path,
                         const std::filesystem::path& tgt_path,
                         std::span<const GeneratedSegment> segments) {
  std::string src;
  std::string tgt;
  for (const auto& segment : segments) {
    src += segment.src_text;
    src += '\n';
    tgt += segment.tgt_text;
    tgt += '\n';
  }
  atomic_write(src_path, src);
  atomic_write(tgt_path, tgt);
}

std::vector<GeneratedSegment> read_segments_jsonl(
    const std::filesystem::path& path) {
  std::vector<GeneratedSegment> segments;
  for (const auto& line : read_lines(path)) {
    if (strip(line).empty()) continue;
    segments.push_back(segment_from_jsonl(line));
  }
  return segments;
}

}  // namespace cskit
