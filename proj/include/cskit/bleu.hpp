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

#ifndef CSKIT_BLEU_HPP
#define CSKIT_BLEU_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace cskit {

enum class Smoothing { kNone, kAddK };

inline constexpr int kBleuOrder = 4;

// Corpus-level modified n-gram counts over whitespace tokens.
struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> match{};
  std::array<std::uint64_t, kBleuOrder> total{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
  bool operator==(const BleuStats&) const = default;
};

struct BleuReport {
  double score = 0.0;  // 0..100
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
};

// Per-segment counting; OpenMP over segments with integer merges, so the
// parallel path equals the serial reference exactly.
BleuStats bleu_stats(std::span<const std::string> hypotheses,
                     std::span<const std::string> references);
BleuStats bleu_stats_serial(std::span<const std::string> hypotheses,
                            std::span<const std::string> references);

// Precisions with zero-denominator orders treated as 1; add-k smoothing
// (k=1) applies to orders > 1 only. Score is 0 whenever some precision is 0.
BleuReport score_from_stats(const BleuStats& stats, Smoothing smoothing);

BleuReport bleu(std::span<const std::string> hypotheses,
                std::span<const std::string> references,
                Smoothing smoothing = Smoothing::kNone);

// "BLEU = <score> (p1/p2/p3/p4, BP=<bp>, hyp_len=<n>, ref_len=<n>)"
std::string summary_line(const BleuReport& report);
std::string bleu_report_to_json(const BleuReport& report);

}  // namespace cskit

#endif  // CSKIT_BLEU_HPP
