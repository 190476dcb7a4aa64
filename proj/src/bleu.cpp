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

#include "cskit/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cskit/error.hpp"
#include "cskit/io.hpp"

namespace cskit {

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::uint64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i,
                                       tokens.begin() + i + n);
    ++counts[std::move(gram)];
  }
  return counts;
}

// Modified (clipped) n-gram counts for one segment.
BleuStats segment_stats(const std::string& hypothesis,
                        const std::string& reference) {
  BleuStats s;
  const auto hyp = split_tokens(hypothesis);
  const auto ref = split_tokens(reference);
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    if (static_cast<int>(hyp.size()) < n) break;
    s.total[n - 1] = hyp.size() - n + 1;
    const auto hyp_counts = count_ngrams(hyp, n);
    const auto ref_counts = count_ngrams(ref, n);
    for (const auto& [gram, count] : hyp_counts) {
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) {
        s.match[n - 1] += std::min(count, it->second);
      }
    }
  }
  return s;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kBleuOrder; ++n) {
    match[n] += other.match[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats bleu_stats(std::span<const std::string> hypotheses,
                     std::span<const std::string> references) {
  std::vector<BleuStats> per_segment(hypotheses.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(hypotheses.size());
       ++i) {
    per_segment[i] = segment_stats(hypotheses[i], references[i]);
  }
  BleuStats stats;  // integer merges, so order never matters
  for (const auto& s : per_segment) stats += s;
  return stats;
}

BleuStats bleu_stats_serial(std::span<const std::string> hypotheses,
                            std::span<const std::string> references) {
  BleuStats stats;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    stats += segment_stats(hypotheses[i], references[i]);
  }
  return stats;
}

BleuReport score_from_stats(const BleuStats& stats, Smoothing smoothing) {
  BleuReport report;
  report.hyp_len = stats.hyp_len;
  report.ref_len = stats.ref_len;
  if (stats.hyp_len == 0) {
    report.brevity_penalty = 0.0;
    return report;
  }
  double log_sum = 0.0;
  bool has_zero = false;
  for (int n = 0; n < kBleuOrder; ++n) {
    double p;
    if (smoothing == Smoothing::kAddK && n > 0) {
      p = static_cast<double>(stats.match[n] + 1) /
          static_cast<double>(stats.total[n] + 1);
    } else if (stats.total[n] == 0) {
      p = 1.0;  // no n-grams of this order to score
    } else {
      p = static_cast<double>(stats.match[n]) /
          static_cast<double>(stats.total[n]);
    }
    report.precisions[n] = p;
    if (p > 0.0) {
      log_sum += std::log(p);
    } else {
      has_zero = true;
    }
  }
  report.brevity_penalty =
      stats.hyp_len >= stats.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(stats.ref_len) /
                               static_cast<double>(stats.hyp_len));
  report.score = has_zero ? 0.0
                          : 100.0 * report.brevity_penalty *
                                std::exp(log_sum / kBleuOrder);
  return report;
}

BleuReport bleu(std::span<const std::string> hypotheses,
                std::span<const std::string> references, Smoothing smoothing) {
  if (hypotheses.size() != references.size()) {
    throw AlignmentError("hypothesis/reference line counts differ: " +
                         std::to_string(hypotheses.size()) + " vs " +
                         std::to_string(references.size()));
  }
  if (hypotheses.empty()) {
    throw Error("empty hypothesis corpus");
  }
  return score_from_stats(bleu_stats(hypotheses, references), smoothing);
}

std::string summary_line(const BleuReport& report) {
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "BLEU = %.2f (%.1f/%.1f/%.1f/%.1f, BP=%.3f, hyp_len=%llu, "
                "ref_len=%llu)",
                report.score, 100.0 * report.precisions[0],
                100.0 * report.precisions[1], 100.0 * report.precisions[2],
                100.0 * report.precisions[3], report.brevity_penalty,
                static_cast<unsigned long long>(report.hyp_len),
                static_cast<unsigned long long>(report.ref_len));
  return buf;
}

std::string bleu_report_to_json(const BleuReport& report) {
  nlohmann::ordered_json j;
  j["score"] = report.score;
  j["precisions"] = report.precisions;
  j["brevity_penalty"] = report.brevity_penalty;
  j["hyp_len"] = report.hyp_len;
  j["ref_len"] = report.ref_len;
  return j.dump();
}

}  // namespace cskit
