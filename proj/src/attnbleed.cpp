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

#include "cskit/attnbleed.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>

#include <json.hpp>

#include "cskit/error.hpp"
#include "cskit/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary attention format assumes a little-endian host");

namespace cskit {

namespace {

using njson = nlohmann::ordered_json;

constexpr char kMagic[4] = {'C', 'S', 'A', 'B'};
constexpr std::uint32_t kBinaryVersion = 1;

void validate_record(const AttentionRecord& r,
                     const AttentionParseOptions& options,
                     std::vector<RowSumDeviation>* deviations) {
  if (r.layers < 1 || r.heads < 1) {
    throw ShapeError("record '" + r.id + "': layer and head counts must be "
                     "positive");
  }
  if (r.src_len < 2 || r.tgt_len < 2) {
    throw ValidationError("record '" + r.id + "': two-sentence grids need "
                          "lengths of at least 2");
  }
  if (r.src_boundary < 1 || r.src_boundary >= r.src_len ||
      r.tgt_boundary < 1 || r.tgt_boundary >= r.tgt_len) {
    throw ValidationError("record '" + r.id + "': boundary must be interior "
                          "(1 <= boundary < length)");
  }
  const std::size_t expected = static_cast<std::size_t>(r.layers) * r.heads *
                               r.tgt_len * r.src_len;
  if (r.weights.size() != expected) {
    throw ShapeError("record '" + r.id + "': declared dims imply " +
                     std::to_string(expected) + " weights, got " +
                     std::to_string(r.weights.size()));
  }
  for (double w : r.weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw ValidationError("record '" + r.id +
                            "': attention weights must be finite and >= 0");
    }
  }
  for (int l = 0; l < r.layers; ++l) {
    for (int h = 0; h < r.heads; ++h) {
      for (int t = 0; t < r.tgt_len; ++t) {
        double sum = 0.0;
        for (int s = 0; s < r.src_len; ++s) sum += r.at(l, h, t, s);
        if (std::abs(sum - 1.0) > options.row_sum_tol) {
          if (options.strict) {
            throw ValidationError(
                "record '" + r.id + "': attention row (l=" +
                std::to_string(l) + ", h=" + std::to_string(h) + ", t=" +
                std::to_string(t) + ") sums to " + std::to_string(sum));
          }
          if (deviations != nullptr) {
            deviations->push_back({r.id, l, h, t, sum});
          }
        }
      }
    }
  }
}

int boundary_from_json(const njson& j, const char* key, const std::string& id) {
  const auto& v = j.at(key);
  if (v.is_array()) {
    if (v.size() != 1) {
      throw ValidationError("record '" + id + "': bleed is defined for a "
                            "concatenation of two sentences; got " +
                            std::to_string(v.size()) + " boundaries in " + key);
    }
    return v[0].get<int>();
  }
  return v.get<int>();
}

AttentionRecord record_from_json(const njson& j) {
  AttentionRecord r;
  r.id = j.at("id").get<std::string>();
  r.layers = j.at("L").get<int>();
  r.heads = j.at("H").get<int>();
  r.src_len = j.at("src_len").get<int>();
  r.tgt_len = j.at("tgt_len").get<int>();
  r.src_boundary = boundary_from_json(j, "src_boundary", r.id);
  r.tgt_boundary = boundary_from_json(j, "tgt_boundary", r.id);

  const auto& grids = j.at("grids");
  auto shape_error = [&](const char* what, std::size_t got, int want) {
    return ShapeError("record '" + r.id + "': grids " + what + " dimension is " +
                      std::to_string(got) + ", declared " +
                      std::to_string(want));
  };
  if (static_cast<int>(grids.size()) != r.layers) {
    throw shape_error("layer", grids.size(), r.layers);
  }
  r.weights.reserve(static_cast<std::size_t>(r.layers) * r.heads * r.tgt_len *
                    r.src_len);
  for (const auto& layer : grids) {
    if (static_cast<int>(layer.size()) != r.heads) {
      throw shape_error("head", layer.size(), r.heads);
    }
    for (const auto& head : layer) {
      if (static_cast<int>(head.size()) != r.tgt_len) {
        throw shape_error("target", head.size(), r.tgt_len);
      }
      for (const auto& row : head) {
        if (static_cast<int>(row.size()) != r.src_len) {
          throw shape_error("source", row.size(), r.src_len);
        }
        for (const auto& w : row) {
          r.weights.push_back(w.get<double>());
        }
      }
    }
  }
  return r;
}

std::vector<AttentionRecord> parse_binary(const std::string& bytes) {
  std::size_t pos = 4;  // past magic
  auto read_u32 = [&](const char* what) {
    if (pos + 4 > bytes.size()) {
      throw ValidationError(std::string("truncated attention file reading ") +
                            what);
    }
    std::uint32_t v = 0;
    std::memcpy(&v, bytes.data() + pos, 4);
    pos += 4;
    return v;
  };
  const std::uint32_t version = read_u32("version");
  if (version != kBinaryVersion) {
    throw ValidationError("unsupported attention file version " +
                          std::to_string(version));
  }
  std::vector<AttentionRecord> records;
  while (pos < bytes.size()) {
    AttentionRecord r;
    const std::uint32_t id_len = read_u32("id length");
    if (pos + id_len > bytes.size()) {
      throw ValidationError("truncated attention file reading record id");
    }
    r.id.assign(bytes, pos, id_len);
    pos += id_len;
    r.layers = static_cast<int>(read_u32("layer count"));
    r.heads = static_cast<int>(read_u32("head count"));
    r.src_len = static_cast<int>(read_u32("source length"));
    r.tgt_len = static_cast<int>(read_u32("target length"));
    r.src_boundary = static_cast<int>(read_u32("source boundary"));
    r.tgt_boundary = static_cast<int>(read_u32("target boundary"));
    const std::size_t count = static_cast<std::size_t>(r.layers) * r.heads *
                              r.tgt_len * r.src_len;
    if (pos + 4 * count > bytes.size()) {
      throw ValidationError("truncated attention file reading weights of "
                            "record '" + r.id + "'");
    }
    r.weights.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      float f = 0.0f;
      std::memcpy(&f, bytes.data() + pos, 4);
      pos += 4;
      r.weights[i] = static_cast<double>(f);
    }
    records.push_back(std::move(r));
  }
  return records;
}

double scale1(double value) { return std::round(value * 1000.0) / 10.0; }

}  // namespace

AttentionParseResult parse_attention(const std::filesystem::path& path,
                                     const AttentionParseOptions& options) {
  const std::string bytes = read_file(path);
  AttentionParseResult result;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    result.records = parse_binary(bytes);
  } else {
    std::size_t begin = 0;
    std::size_t line_no = 0;
    while (begin < bytes.size()) {
      std::size_t end = bytes.find('\n', begin);
      if (end == std::string::npos) end = bytes.size();
      const std::string_view line(bytes.data() + begin, end - begin);
      begin = end + 1;
      ++line_no;
      if (strip(line).empty()) continue;
      njson j;
      try {
        j = njson::parse(line);
        result.records.push_back(record_from_json(j));
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": bad attention record: " + e.what());
      }
    }
  }
  for (const auto& record : result.records) {
    validate_record(record, options, &result.deviations);
  }
  return result;
}

void write_attention_jsonl(const std::filesystem::path& path,
                           std::span<const AttentionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    njson j;
    j["id"] = r.id;
    j["L"] = r.layers;
    j["H"] = r.heads;
    j["src_len"] = r.src_len;
    j["tgt_len"] = r.tgt_len;
    j["src_boundary"] = r.src_boundary;
    j["tgt_boundary"] = r.tgt_boundary;
    njson grids = njson::array();
    for (int l = 0; l < r.layers; ++l) {
      njson layer = njson::array();
      for (int h = 0; h < r.heads; ++h) {
        njson head = njson::array();
        for (int t = 0; t < r.tgt_len; ++t) {
          njson row = njson::array();
          for (int s = 0; s < r.src_len; ++s) row.push_back(r.at(l, h, t, s));
          head.push_back(std::move(row));
        }
        layer.push_back(std::move(head));
      }
      grids.push_back(std::move(layer));
    }
    j["grids"] = std::move(grids);
    out += j.dump();
    out += '\n';
  }
  atomic_write(path, out);
}

void write_attention_binary(const std::filesystem::path& path,
                            std::span<const AttentionRecord> records) {
  std::string out;
  auto put_u32 = [&out](std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
  };
  out.append(kMagic, 4);
  put_u32(kBinaryVersion);
  for (const auto& r : records) {
    put_u32(static_cast<std::uint32_t>(r.id.size()));
    out += r.id;
    put_u32(static_cast<std::uint32_t>(r.layers));
    put_u32(static_cast<std::uint32_t>(r.heads));
    put_u32(static_cast<std::uint32_t>(r.src_len));
    put_u32(static_cast<std::uint32_t>(r.tgt_len));
    put_u32(static_cast<std::uint32_t>(r.src_boundary));
    put_u32(static_cast<std::uint32_t>(r.tgt_boundary));
    for (double w : r.weights) {
      const float f = static_cast<float>(w);
      char buf[4];
      std::memcpy(buf, &f, 4);
      out.append(buf, 4);
    }
  }
  atomic_write(path, out);
}

double bleed_single(const AttentionRecord& record, int layer, int head) {
  if (layer < 0 || layer >= record.layers || head < 0 || head >= record.heads) {
    throw ParamError("layer/head index out of range for record '" + record.id +
                     "'");
  }
  const int sb = record.src_boundary;
  const int tb = record.tgt_boundary;
  double cross = 0.0;
  for (int t = 0; t < record.tgt_len; ++t) {
    if (t < tb) {
      for (int s = sb; s < record.src_len; ++s) {
        cross += record.at(layer, head, t, s);
      }
    } else {
      for (int s = 0; s < sb; ++s) {
        cross += record.at(layer, head, t, s);
      }
    }
  }
  return cross / static_cast<double>(record.tgt_len);
}

namespace {

std::vector<std::size_t> value_offsets(std::span<const AttentionRecord> records) {
  std::vector<std::size_t> offsets(records.size() + 1, 0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    offsets[i + 1] = offsets[i] + static_cast<std::size_t>(records[i].layers) *
                                      records[i].heads;
  }
  return offsets;
}

}  // namespace

std::vector<double> bleed_values(std::span<const AttentionRecord> records) {
  const auto offsets = value_offsets(records);
  std::vector<double> values(offsets.back());
  // Each slot is computed independently and written once, so the result is
  // bit-identical for any thread count.
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(records.size()); ++i) {
    const auto& r = records[i];
    std::size_t at = offsets[i];
    for (int l = 0; l < r.layers; ++l) {
      for (int h = 0; h < r.heads; ++h) {
        values[at++] = bleed_single(r, l, h);
      }
    }
  }
  return values;
}

std::vector<double> bleed_values_serial(
    std::span<const AttentionRecord> records) {
  const auto offsets = value_offsets(records);
  std::vector<double> values(offsets.back());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::size_t at = offsets[i];
    for (int l = 0; l < r.layers; ++l) {
      for (int h = 0; h < r.heads; ++h) {
        values[at++] = bleed_single(r, l, h);
      }
    }
  }
  return values;
}

BleedReport mean_bleed(std::span<const AttentionRecord> records,
                       bool allow_ragged) {
  if (records.empty()) {
    throw Error("no records");
  }
  bool uniform = true;
  for (const auto& r : records) {
    if (r.layers != records[0].layers || r.heads != records[0].heads) {
      uniform = false;
      break;
    }
  }
  if (!uniform && !allow_ragged) {
    throw ShapeError("records disagree on layer/head counts; rerun in ragged "
                     "mode to average per record");
  }

  const auto offsets = value_offsets(records);
  const auto values = bleed_values(records);

  BleedReport report;
  report.n_records = records.size();
  report.per_record.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    double sum = 0.0;
    for (std::size_t v = offsets[i]; v < offsets[i + 1]; ++v) sum += values[v];
    report.per_record.emplace_back(
        records[i].id, sum / static_cast<double>(offsets[i + 1] - offsets[i]));
  }
  double mean = 0.0;
  for (const auto& [id, m] : report.per_record) mean += m;
  report.mean = mean / static_cast<double>(records.size());

  if (uniform) {
    report.layers = records[0].layers;
    report.heads = records[0].heads;
    report.per_layer_head.assign(
        report.layers, std::vector<double>(report.heads, 0.0));
    for (std::size_t i = 0; i < records.size(); ++i) {
      std::size_t at = offsets[i];
      for (int l = 0; l < report.layers; ++l) {
        for (int h = 0; h < report.heads; ++h) {
          report.per_layer_head[l][h] += values[at++];
        }
      }
    }
    for (auto& row : report.per_layer_head) {
      for (double& v : row) v /= static_cast<double>(records.size());
    }
  }
  return report;
}

std::string format_scaled(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value * 100.0);
  return buf;
}

std::string bleed_report_to_json(const BleedReport& report, bool scaled) {
  auto display = [scaled](double v) { return scaled ? scale1(v) : v; };
  njson j;
  j["mean"] = display(report.mean);
  j["mean_scaled"] = scale1(report.mean);
  j["n_records"] = report.n_records;
  njson per_record = njson::array();
  for (const auto& [id, m] : report.per_record) {
    per_record.push_back(njson{{"id", id}, {"mean", display(m)}});
  }
  j["per_record"] = std::move(per_record);
  if (!report.per_layer_head.empty()) {
    njson matrix = njson::array();
    for (const auto& row : report.per_layer_head) {
      njson jrow = njson::array();
      for (double v : row) jrow.push_back(display(v));
      matrix.push_back(std::move(jrow));
    }
    j["per_layer_head"] = std::move(matrix);
  }
  return j.dump();
}

}  // namespace cskit
