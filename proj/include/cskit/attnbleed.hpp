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

#ifndef CSKIT_ATTNBLEED_HPP
#define CSKIT_ATTNBLEED_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cskit {

// Cross-attention grids for one two-sentence segment, force-decoded against
// the reference. Boundaries count post-subword positions of the first
// sentence (1-based end index), so 1 <= boundary < length. Rows A[l][h][t][.]
// are attention distributions over source positions and sum to 1 within
// tolerance; padding must already be excluded by the exporter.
struct AttentionRecord {
  std::string id;
  int layers = 0;  // L
  int heads = 0;   // H
  int src_len = 0;
  int tgt_len = 0;
  int src_boundary = 0;
  int tgt_boundary = 0;
  std::vector<double> weights;  // row-major [L][H][tgt_len][src_len]

  double at(int l, int h, int t, int s) const {
    return weights[((static_cast<std::size_t>(l) * heads + h) * tgt_len + t) *
                       src_len +
                   s];
  }
  double& at(int l, int h, int t, int s) {
    return weights[((static_cast<std::size_t>(l) * heads + h) * tgt_len + t) *
                       src_len +
                   s];
  }
};

struct RowSumDeviation {
  std::string id;
  int layer = 0;
  int head = 0;
  int row = 0;
  double sum = 0.0;
};

struct AttentionParseOptions {
  bool strict = false;  // deviations become errors instead of diagnostics
  double row_sum_tol = 1e-3;
};

struct AttentionParseResult {
  std::vector<AttentionRecord> records;
  std::vector<RowSumDeviation> deviations;
};

// Reads JSONL (canonical) or the compact binary format, sniffed by magic.
AttentionParseResult parse_attention(const std::filesystem::path& path,
                                     const AttentionParseOptions& options = {});

void write_attention_jsonl(const std::filesystem::path& path,
                           std::span<const AttentionRecord> records);
// Compact export: "CSAB" magic, u32 version, then per record a u32 id
// length + id bytes, six u32 dims (L, H, src_len, tgt_len, src_boundary,
// tgt_boundary) and L*H*tgt_len*src_len little-endian f32 weights.
void write_attention_binary(const std::filesystem::path& path,
                            std::span<const AttentionRecord> records);

// Fraction of attention mass in the two cross-sentence blocks, averaged
// over target positions. In [0, 1] for row-stochastic grids. l, h 0-based.
double bleed_single(const AttentionRecord& record, int layer, int head);

// One value per (record, layer, head), record-major; OpenMP over the
// flattened index with the serial loop kept as the test reference. Both
// produce bit-identical values for any thread count.
std::vector<double> bleed_values(std::span<const AttentionRecord> records);
std::vector<double> bleed_values_serial(std::span<const AttentionRecord> records);

struct BleedReport {
  double mean = 0.0;  // in [0, 1]
  int layers = 0;
  int heads = 0;
  std::size_t n_records = 0;
  std::vector<std::pair<std::string, double>> per_record;  // (id, mean over l,h)
  std::vector<std::vector<double>> per_layer_head;  // [L][H]; empty if ragged
};

// Mean bleed across records, layers and heads. Records must share L and H
// unless allow_ragged, in which case per-record means are averaged and the
// per-layer/head matrix is omitted.
BleedReport mean_bleed(std::span<const AttentionRecord> records,
                       bool allow_ragged = false);

// [0,1] value rendered on the 0-100 display scale with one decimal: 0.143
// -> "14.3".
std::string format_scaled(double value);

std::string bleed_report_to_json(const BleedReport& report, bool scaled = false);

}  // namespace cskit

#endif  // CSKIT_ATTNBLEED_HPP
