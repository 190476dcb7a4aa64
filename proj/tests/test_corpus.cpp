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

#include "cskit/corpus.hpp"
#include "cskit/error.hpp"
#include "cskit/io.hpp"
#include "cskit/rng.hpp"
#include "test_util.hpp"

using namespace cskit;
using cskit::testing::TempDir;
using cskit::testing::write_file;

TEST_CASE("tsv loads one pair with lang from flag") {
  TempDir dir("tsv");
  write_file(dir.file("toy.tsv"), "नमस्ते\thello\n");
  const auto corpus = load_parallel_tsv(dir.file("toy.tsv"), "hi", false);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus.lang == "hi");
  CHECK(corpus.pairs[0].src == "नमस्ते");
  CHECK(corpus.pairs[0].tgt == "hello");
  CHECK_FALSE(corpus.lang_column);
}

TEST_CASE("tsv rejects empty fields with a line number") {
  TempDir dir("tsv_bad");
  write_file(dir.file("bad.tsv"), "a\tb\n\tc\n");
  CHECK_THROWS_AS(load_parallel_tsv(dir.file("bad.tsv"), "hi", false),
                  ValidationError);
  try {
    load_parallel_tsv(dir.file("bad.tsv"), "hi", false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("tsv rejects rows with too few or too many columns") {
  TempDir dir("tsv_cols");
  write_file(dir.file("one.tsv"), "only-src\n");
  CHECK_THROWS_AS(load_parallel_tsv(dir.file("one.tsv"), "hi", false),
                  ValidationError);
  write_file(dir.file("four.tsv"), "a\tb\thi\textra\n");
  CHECK_THROWS_AS(load_parallel_tsv(dir.file("four.tsv"), "hi", false),
                  ValidationError);
}

TEST_CASE("paired files load in order and reject ragged counts") {
  TempDir dir("paired");
  write_file(dir.file("a.src"), "s1\ns2\ns3\n");
  write_file(dir.file("a.tgt"), "t1\nt2\nt3\n");
  const auto corpus =
      load_parallel_paired(dir.file("a.src"), dir.file("a.tgt"), "bn", true);
  REQUIRE(corpus.size() == 3);
  CHECK(corpus.pairs[1].src == "s2");
  CHECK(corpus.pairs[2].tgt == "t3");
  CHECK(corpus.order_coherent);

  write_file(dir.file("b.tgt"), "t1\nt2\nt3\nt4\n");
  try {
    load_parallel_paired(dir.file("a.src"), dir.file("b.tgt"), "bn", true);
    FAIL("expected alignment error");
  } catch (const AlignmentError& e) {
    const std::string what = e.what();
    CHECK(what.find("3") != std::string::npos);
    CHECK(what.find("4") != std::string::npos);
  }
}

TEST_CASE("multiparallel directory assembles sorted languages") {
  TempDir dir("mp");
  write_file(dir.file("hi.txt"), "h1\nh2\n");
  write_file(dir.file("bn.txt"), "b1\nb2\n");
  write_file(dir.file("en.txt"), "e1\ne2\n");
  const auto corpus = load_multiparallel(dir.path(), "en");
  CHECK(corpus.num_langs() == 2);
  CHECK(corpus.size() == 2);
  CHECK(corpus.langs() == std::vector<LangCode>{"bn", "hi"});
  CHECK(corpus.target_lang() == "en");
  CHECK(corpus.source(0, 0) == "b1");
  CHECK(corpus.source(1, 1) == "h2");
  CHECK(corpus.order_coherent());
}

TEST_CASE("multiparallel rejects unequal line counts naming the file") {
  TempDir dir("mp_bad");
  write_file(dir.file("bn.txt"), "b1\nb2\n");
  write_file(dir.file("en.txt"), "e1\ne2\ne3\n");
  try {
    load_multiparallel(dir.path(), "en");
    FAIL("expected alignment error");
  } catch (const AlignmentError& e) {
    CHECK(std::string(e.what()).find("bn.txt") != std::string::npos);
  }
}

TEST_CASE("multiparallel requires a source language and a target file") {
  TempDir dir("mp_only_en");
  write_file(dir.file("en.txt"), "e1\n");
  try {
    load_multiparallel(dir.path(), "en");
    FAIL("expected config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("at least one source language") !=
          std::string::npos);
  }

  TempDir dir2("mp_no_tgt");
  write_file(dir2.file("bn.txt"), "b1\n");
  CHECK_THROWS_AS(load_multiparallel(dir2.path(), "en"), ConfigError);
}

TEST_CASE("stats counts whitespace tokens") {
  ParallelCorpus corpus;
  corpus.lang = "hi";
  corpus.pairs.push_back({"a b c", "x y"});
  const auto s = stats(corpus);
  CHECK(s.segments == 1);
  CHECK(s.src_tokens == 3);
  CHECK(s.tgt_tokens == 2);

  const auto empty = stats(ParallelCorpus{});
  CHECK(empty == CorpusStats{});
}

TEST_CASE("multiparallel stats report the union of per-language sets") {
  const auto corpus = MultiParallelCorpus::create(
      {"bn", "hi"}, "en", {{"a b"}, {"c"}}, {"x"}, true);
  const auto s = stats(corpus);
  CHECK(s.segments == 2);
  CHECK(s.src_tokens == 3);
  CHECK(s.tgt_tokens == 2);

  const auto per_lang = per_language_stats(corpus);
  REQUIRE(per_lang.size() == 2);
  CHECK(per_lang[0].first == "bn");
  CHECK(per_lang[0].second == CorpusStats{1, 2, 1});
  CHECK(per_lang[1].second == CorpusStats{1, 1, 1});
}

TEST_CASE("stats are additive over concatenation") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ParallelCorpus a;
    a.lang = "hi";
    ParallelCorpus b = a;
    auto random_pairs = [&](ParallelCorpus& c) {
      const std::size_t count = rng.below(6);
      for (std::size_t i = 0; i < count; ++i) {
        std::string src;
        std::string tgt;
        for (std::size_t t = 0; t <= rng.below(4); ++t) src += "s ";
        for (std::size_t t = 0; t <= rng.below(4); ++t) tgt += "t ";
        c.pairs.push_back({src + "end", tgt + "end"});
      }
    };
    random_pairs(a);
    random_pairs(b);
    ParallelCorpus both = a;
    both.pairs.insert(both.pairs.end(), b.pairs.begin(), b.pairs.end());
    CHECK(stats(both) == stats(a) + stats(b));
  }
}

TEST_CASE("well-formed tsv round-trips byte-identically") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const bool with_lang = rng.coin();
    std::string tsv;
    const std::size_t rows = 1 + rng.below(8);
    for (std::size_t i = 0; i < rows; ++i) {
      tsv += "src" + std::to_string(rng.below(100)) + " tok\ttgt" +
             std::to_string(rng.below(100));
      if (with_lang) tsv += "\thi";
      tsv += '\n';
    }
    TempDir dir("roundtrip");
    write_file(dir.file("c.tsv"), tsv);
    const auto corpus = load_parallel_tsv(dir.file("c.tsv"), "hi", false);
    CHECK(to_tsv(corpus) == tsv);
  }
}

TEST_CASE("ragged multiparallel construction always errors") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t K = 1 + rng.below(4);
    const std::size_t n = 1 + rng.below(5);
    std::vector<LangCode> langs;
    std::vector<std::vector<std::string>> sources;
    for (std::size_t k = 0; k < K; ++k) {
      langs.push_back("l" + std::to_string(k));
      sources.emplace_back(n, "s");
    }
    std::vector<std::string> targets(n, "t");
    // perturb exactly one list so some length differs
    const std::size_t victim = rng.below(K + 1);
    if (victim < K) {
      sources[victim].push_back("extra");
    } else {
      targets.push_back("extra");
    }
    CHECK_THROWS_AS(MultiParallelCorpus::create(langs, "en", sources, targets,
                                                true),
                    Error);
  }
}

TEST_CASE("language codes are validated") {
  CHECK_THROWS_AS(validate_lang_code(""), ValidationError);
  CHECK_THROWS_AS(validate_lang_code("EN"), ValidationError);
  CHECK_THROWS_AS(validate_lang_code("e n"), ValidationError);
  CHECK_NOTHROW(validate_lang_code("bn"));
  CHECK_NOTHROW(validate_lang_code("l0"));
}

TEST_CASE("multiparallel rejects duplicate or target-colliding languages") {
  CHECK_THROWS_AS(MultiParallelCorpus::create({"bn", "bn"}, "en",
                                              {{"a"}, {"b"}}, {"t"}, true),
                  ValidationError);
  CHECK_THROWS_AS(MultiParallelCorpus::create({"en"}, "en", {{"a"}}, {"t"},
                                              true),
                  ValidationError);
}

TEST_CASE("grouped tsv loading splits by language column") {
  TempDir dir("groups");
  write_file(dir.file("mixed.tsv"),
             "h1\te1\thi\nb1\tf1\tbn\nh2\te2\thi\n");
  const auto groups = load_parallel_groups(dir.file("mixed.tsv"), "xx", false);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].lang == "bn");
  CHECK(groups[0].size() == 1);
  CHECK(groups[1].lang == "hi");
  CHECK(groups[1].size() == 2);
  CHECK(groups[1].pairs[1].src == "h2");
}

TEST_CASE("sentences are stripped and validated") {
  CHECK(normalize_sentence("  hello world \t", "x") == "hello world");
  CHECK_THROWS_AS(normalize_sentence("   ", "x"), ValidationError);
  CHECK_THROWS_AS(normalize_sentence("a\nb", "x"), ValidationError);
}
