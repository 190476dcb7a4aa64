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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cskit/checks.hpp"
#include "cskit/error.hpp"
#include "cskit/io.hpp"
#include "test_util.hpp"

using namespace cskit;

namespace {

// bn: b1 b2, hi: h1 h2, en: e1 e2
MultiParallelCorpus toy_corpus(bool coherent = true) {
  return MultiParallelCorpus::create({"bn", "hi"}, "en",
                                     {{"b1", "b2"}, {"h1", "h2"}},
                                     {"e1", "e2"}, coherent);
}

std::string dump(const std::vector<GeneratedSegment>& segments) {
  std::string out;
  for (const auto& s : segments) out += segment_to_jsonl(s) + "\n";
  return out;
}

}  // namespace

TEST_CASE("ctl forward instantiates src+next-target") {
  const auto corpus = toy_corpus();
  const auto s = detail::emit_ctl(corpus, true, /*hi*/ 1, 0, " ");
  CHECK(s.src_text == "h1 e2");
  CHECK(s.tgt_text == "e1 e2");
  CHECK(s.src_joins == std::vector<std::size_t>{2});
  CHECK(s.src_langs == std::vector<LangCode>{"hi", "en"});
}

TEST_CASE("ctl reverse instantiates target+next-src") {
  const auto corpus = toy_corpus();
  const auto s = detail::emit_ctl(corpus, false, 1, 0, " ");
  CHECK(s.src_text == "e1 h2");
  CHECK(s.tgt_text == "e1 e2");
  CHECK(s.src_langs == std::vector<LangCode>{"en", "hi"});
}

TEST_CASE("csl joins consecutive same-language sentences") {
  const auto corpus = toy_corpus();
  const auto s = detail::emit_csl(corpus, 1, 0, " ");
  CHECK(s.src_text == "h1 h2");
  CHECK(s.tgt_text == "e1 e2");
  CHECK(s.src_langs == std::vector<LangCode>{"hi", "hi"});
}

TEST_CASE("csl with count ALL emits one pair per language") {
  const auto sc = testing::make_multiparallel(3, 2);
  CheckSpec spec;
  spec.count = std::nullopt;
  const auto segments = gen_csl(sc.corpus, spec);
  CHECK(segments.size() == 3);
}

TEST_CASE("cxl honours a forced ordered pair") {
  const auto corpus = toy_corpus();
  const auto a = detail::emit_cxl(corpus, 0, 1, 0, " ");
  CHECK(a.src_text == "b1 h2");
  CHECK(a.tgt_text == "e1 e2");
  const auto b = detail::emit_cxl(corpus, 1, 0, 0, " ");
  CHECK(b.src_text == "h1 b2");

  CheckSpec spec;
  spec.count = std::nullopt;
  spec.pair_policy.forced = {{"bn", "hi"}};
  const auto segments = gen_cxl(corpus, spec);
  REQUIRE(segments.size() == 1);
  CHECK(segments[0].src_text == "b1 h2");
  CHECK(segments[0].src_langs == std::vector<LangCode>{"bn", "hi"});

  spec.pair_policy.forced = {{"hi", "bn"}};
  CHECK(gen_cxl(corpus, spec)[0].src_text == "h1 b2");
}

TEST_CASE("cxl requires two source languages and rejects k == m") {
  const auto single = MultiParallelCorpus::create({"hi"}, "en", {{"h1", "h2"}},
                                                  {"e1", "e2"}, true);
  try {
    CheckSpec spec;
    gen_cxl(single, spec);
    FAIL("expected precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("at least two source languages") !=
          std::string::npos);
  }
  CheckSpec forced_same;
  forced_same.pair_policy.forced = {{"hi", "hi"}};
  CHECK_THROWS_AS(gen_cxl(toy_corpus(), forced_same), ParamError);
}

TEST_CASE("checks are deterministic under a fixed seed") {
  const auto sc = testing::make_multiparallel(3, 20);
  CheckSpec spec;
  spec.seed = 99;
  spec.count = 25;
  CHECK(dump(gen_cxl(sc.corpus, spec)) == dump(gen_cxl(sc.corpus, spec)));
  CHECK(dump(gen_csl(sc.corpus, spec)) == dump(gen_csl(sc.corpus, spec)));
  CHECK(dump(gen_rxl(sc.corpus, spec)) == dump(gen_rxl(sc.corpus, spec)));
  CHECK(dump(gen_ctl(sc.corpus, CtlDirection::kMixed, spec)) ==
        dump(gen_ctl(sc.corpus, CtlDirection::kMixed, spec)));
  CHECK(dump(gen_cksl(sc.corpus, 4, spec)) == dump(gen_cksl(sc.corpus, 4, spec)));
}

TEST_CASE("ctl and csl demand order coherency") {
  const auto corpus = toy_corpus(/*coherent=*/false);
  CheckSpec spec;
  spec.count = 1;
  try {
    gen_ctl(corpus, CtlDirection::kFwd, spec);
    FAIL("expected precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("coherent sentence order") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(gen_csl(corpus, spec), PreconditionError);
  CHECK_THROWS_AS(gen_cxl(corpus, spec), PreconditionError);
  CHECK_THROWS_AS(gen_cksl(corpus, 2, spec), PreconditionError);
  CHECK_NOTHROW(gen_rxl(corpus, spec));  // R-XL does not need coherency
}

TEST_CASE("generators reject corpora without consecutive pairs") {
  const auto tiny = MultiParallelCorpus::create({"hi"}, "en", {{"h1"}}, {"e1"},
                                                true);
  CheckSpec spec;
  spec.count = 1;
  CHECK_THROWS_AS(gen_ctl(tiny, CtlDirection::kFwd, spec), PreconditionError);
  CHECK_THROWS_AS(gen_csl(tiny, spec), PreconditionError);
  CHECK_THROWS_AS(gen_rxl(tiny, spec), PreconditionError);
}

TEST_CASE("ctl downsamples uniformly to the requested count") {
  const auto sc = testing::make_multiparallel(10, 1000, 2);
  CheckSpec spec;
  spec.seed = 7;
  spec.count = 1000;
  const auto segments = gen_ctl(sc.corpus, CtlDirection::kFwd, spec);
  CHECK(segments.size() == 1000);  // pool is 10 x 999
  // re-run determinism over the large pool
  const auto again = gen_ctl(sc.corpus, CtlDirection::kFwd, spec);
  CHECK(dump(segments) == dump(again));
  std::set<std::string> distinct;
  for (const auto& s : segments) distinct.insert(s.src_text);
  CHECK(distinct.size() == 1000);  // sample without replacement
}

TEST_CASE("output count is min of request and pool") {
  const auto sc = testing::make_multiparallel(2, 4);
  CheckSpec spec;
  spec.count = 1000;  // pool for csl is 2 x 3 = 6
  CHECK(gen_csl(sc.corpus, spec).size() == 6);
  spec.count = 4;
  CHECK(gen_csl(sc.corpus, spec).size() == 4);
}

TEST_CASE("mixed ctl emits both directions") {
  const auto sc = testing::make_multiparallel(2, 40);
  CheckSpec spec;
  spec.seed = 3;
  spec.count = 60;
  const auto segments = gen_ctl(sc.corpus, CtlDirection::kMixed, spec);
  REQUIRE(segments.size() == 60);
  std::size_t fwd = 0;
  std::size_t rev = 0;
  for (const auto& s : segments) {
    if (s.kind == SegmentKind::kCtlFwd) ++fwd;
    if (s.kind == SegmentKind::kCtlRev) ++rev;
  }
  CHECK(fwd + rev == 60);
  CHECK(fwd > 10);
  CHECK(rev > 10);
}

TEST_CASE("rxl emits forced draws faithfully") {
  const auto corpus = toy_corpus();
  const auto a = detail::emit_rxl(corpus, 0, 0, 1, 1, " ");
  CHECK(a.src_text == "b1 h2");
  CHECK(a.tgt_text == "e1 e2");
  const auto b = detail::emit_rxl(corpus, 1, 1, 1, 0, " ");
  CHECK(b.src_text == "h2 h1");
  CHECK(b.tgt_text == "e2 e1");  // same-language random pair is legal
}

TEST_CASE("rxl never pairs a sentence with itself in the same language") {
  const auto sc = testing::make_multiparallel(2, 30);
  CheckSpec spec;
  spec.seed = 5;
  spec.count = 500;
  for (const auto& s : gen_rxl(sc.corpus, spec)) {
    const auto parts = split_at_offsets(s.src_text, s.src_joins, 1);
    REQUIRE(parts.size() == 2);
    if (s.src_langs[0] == s.src_langs[1]) {
      CHECK(parts[0] != parts[1]);
    }
  }
}

TEST_CASE("rxl rejects counts beyond the distinct candidate space") {
  const auto sc = testing::make_multiparallel(1, 2);
  CheckSpec spec;
  spec.count = 10;  // space is (1*2)^2 - 2 = 2
  try {
    gen_rxl(sc.corpus, spec);
    FAIL("expected param error");
  } catch (const ParamError& e) {
    CHECK(std::string(e.what()).find("2 distinct candidates") !=
          std::string::npos);
  }
  spec.count = std::nullopt;
  CHECK_THROWS_AS(gen_rxl(sc.corpus, spec), ParamError);
}

TEST_CASE("rxl draws languages uniformly for the first slot") {
  const auto sc = testing::make_multiparallel(2, 120, 2);
  CheckSpec spec;
  spec.seed = 202;
  spec.count = 10000;
  const auto segments = gen_rxl(sc.corpus, spec);
  std::size_t first_l0 = 0;
  for (const auto& s : segments) {
    if (s.src_langs[0] == "l0") ++first_l0;
  }
  // binomial(10000, 1/2): 3 sigma = 150, spec allows 300
  CHECK(first_l0 > 4700);
  CHECK(first_l0 < 5300);
}

TEST_CASE("cksl emits the forced join counts") {
  const auto sc = testing::make_multiparallel(1, 4, 1);
  const auto four = detail::emit_cksl(sc.corpus, 0, 0, 4, " ");
  CHECK(four.src_joins.size() == 3);
  CHECK(four.src_langs.size() == 4);
  const auto parts = split_at_offsets(four.src_text, four.src_joins, 1);
  REQUIRE(parts.size() == 4);
  CHECK(parts[0] == sc.corpus.source(0, 0));
  CHECK(parts[3] == sc.corpus.source(0, 3));

  const auto one = detail::emit_cksl(sc.corpus, 0, 2, 1, " ");
  CHECK(one.src_joins.empty());
  CHECK(one.src_text == sc.corpus.source(0, 2));
}

TEST_CASE("cksl validates its parameters") {
  const auto sc = testing::make_multiparallel(2, 4);
  CheckSpec spec;
  spec.count = 10;
  CHECK_THROWS_AS(gen_cksl(sc.corpus, 1, spec), ParamError);
  CHECK_THROWS_AS(gen_cksl(sc.corpus, 5, spec), PreconditionError);
  spec.count = std::nullopt;
  CHECK_THROWS_AS(gen_cksl(sc.corpus, 4, spec), ParamError);
}

TEST_CASE("cksl join counts are uniform over [1, k_max]") {
  const auto sc = testing::make_multiparallel(2, 50, 2);
  CheckSpec spec;
  spec.seed = 31;
  spec.count = 10000;
  const auto segments = gen_cksl(sc.corpus, 4, spec);
  double total_joins = 0.0;
  for (const auto& s : segments) {
    total_joins += static_cast<double>(s.src_langs.size());
  }
  const double mean = total_joins / static_cast<double>(segments.size());
  CHECK(std::abs(mean - 2.5) < 0.05);
}

TEST_CASE("segments split losslessly and target joins align") {
  const auto sc = testing::make_multiparallel(3, 30);
  CheckSpec spec;
  spec.seed = 17;
  spec.count = 80;
  auto verify = [&](const std::vector<GeneratedSegment>& segments) {
    for (const auto& s : segments) {
      const auto src_parts = split_at_offsets(s.src_text, s.src_joins, 1);
      const auto tgt_parts = split_at_offsets(s.tgt_text, s.tgt_joins, 1);
      REQUIRE(src_parts.size() == s.src_langs.size());
      REQUIRE(src_parts.size() == tgt_parts.size());
      CHECK(join_with_offsets(src_parts, " ", nullptr) == s.src_text);
      for (const auto& piece : tgt_parts) {
        CHECK(sc.tgt_lookup.count(piece) == 1);
      }
    }
  };
  verify(gen_csl(sc.corpus, spec));
  verify(gen_cxl(sc.corpus, spec));
  verify(gen_rxl(sc.corpus, spec));
  verify(gen_cksl(sc.corpus, 4, spec));
}

TEST_CASE("cxl never repeats a language, csl never mixes") {
  const auto sc = testing::make_multiparallel(4, 12);
  CheckSpec spec;
  spec.seed = 23;
  spec.count = 200;
  for (const auto& s : gen_cxl(sc.corpus, spec)) {
    REQUIRE(s.src_langs.size() == 2);
    CHECK(s.src_langs[0] != s.src_langs[1]);
  }
  for (const auto& s : gen_csl(sc.corpus, spec)) {
    REQUIRE(s.src_langs.size() == 2);
    CHECK(s.src_langs[0] == s.src_langs[1]);
  }
}

TEST_CASE("custom join strings keep offsets consistent") {
  const auto corpus = toy_corpus();
  const auto s = detail::emit_csl(corpus, 0, 0, "");
  CHECK(s.src_text == "b1b2");
  CHECK(s.src_joins == std::vector<std::size_t>{2});
  const auto parts = split_at_offsets(s.src_text, s.src_joins, 0);
  CHECK(parts == std::vector<std::string>{"b1", "b2"});
}
