// Copyright 2026 The dtrprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dtrprof/characteristics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "dtrprof/error.hpp"
#include "test_util.hpp"

namespace dtrprof {
namespace {

constexpr double kTol = 1e-12;

StopwordList small_stopwords() { return StopwordList({"the", "a", "is", "i", "on"}); }

Corpus hand_corpus() {
  return testing::make_corpus({{"the cat is on a mat .", "m"},
                               {"I love Linux!", "m"},
                               {"The dog barked loudly.", "f"},
                               {"a cat sat", "f"},
                               {"extraordinary things happen", "f"},
                               {"linux is great", "o"}});
}

// Expected values worked out by hand: 25 tokens, 19 distinct; 14 content
// tokens; one distinct term ("extraordinary") above mean + sd of lengths;
// category sizes (3, 2, 1); pairwise Jaccard f/m 2/9, f/o 0, m/o 1/6.
TEST(CollectionStatsTest, HandBuiltCorpus) {
  const auto s = collection_stats(hand_corpus(), "gender", small_stopwords());
  EXPECT_NEAR(s.ttr, 19.0 / 25.0, kTol);
  EXPECT_NEAR(s.ld, 14.0 / 25.0, kTol);
  EXPECT_NEAR(s.sx, 1.0 / 19.0, kTol);
  EXPECT_NEAR(s.shortness, 25.0 / 6.0, kTol);
  EXPECT_NEAR(s.imbalance, std::sqrt(2.0 / 3.0), kTol);
  EXPECT_NEAR(s.hardness, 7.0 / 54.0, kTol);
}

TEST(CollectionStatsTest, TypeTokenRatioOfTenTokens) {
  const Corpus c = testing::make_corpus({{"a b c d e a b c d e", "x"}});
  EXPECT_DOUBLE_EQ(collection_stats(c, "gender", StopwordList()).ttr, 0.5);
}

TEST(CollectionStatsTest, ImbalanceOfThreeAndOne) {
  const Corpus c = testing::make_corpus({{"a", "x"}, {"a", "x"}, {"a", "x"}, {"a", "y"}});
  EXPECT_DOUBLE_EQ(collection_stats(c, "gender", StopwordList()).imbalance, 1.0);
}

TEST(CollectionStatsTest, ImbalanceOfTableCounts) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < 73; ++i) rows.emplace_back("w", "female");
  for (int i = 0; i < 74; ++i) rows.emplace_back("w", "male");
  EXPECT_NEAR(collection_stats(testing::make_corpus(rows), "gender", StopwordList()).imbalance, 0.5, kTol);
}

TEST(CollectionStatsTest, HardnessOfOverlappingVocabularies) {
  const Corpus c = testing::make_corpus({{"a b c", "x"}, {"b c d", "y"}});
  EXPECT_DOUBLE_EQ(collection_stats(c, "gender", StopwordList()).hardness, 0.5);
}

TEST(CollectionStatsTest, DuplicationInvariants) {
  const Corpus base = hand_corpus();
  std::vector<AuthorDoc> docs = base.docs();
  for (const auto& d : base.docs()) docs.push_back(make_author_doc(d.author_id + "_dup", d.text, d.labels));
  const Corpus twice(std::move(docs));
  const auto a = collection_stats(base, "gender", small_stopwords());
  const auto b = collection_stats(twice, "gender", small_stopwords());
  EXPECT_NEAR(b.ld, a.ld, kTol);
  EXPECT_NEAR(b.sx, a.sx, kTol);
  EXPECT_NEAR(b.hardness, a.hardness, kTol);
  EXPECT_NEAR(b.shortness, a.shortness, kTol);
  EXPECT_NEAR(b.imbalance, 2.0 * a.imbalance, kTol);
}

TEST(CollectionStatsTest, RangesOnRandomCorpora) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = collection_stats(testing::random_micro_corpus(gen, 10, 20, 3), "gender",
                                    StopwordList::english());
    for (double v : {s.ttr, s.ld, s.sx, s.hardness}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(s.imbalance, 0.0);
  }
}

TEST(StopwordTest, BundledListAndContentTokens) {
  const auto sw = StopwordList::english();
  EXPECT_TRUE(sw.contains("the"));
  EXPECT_TRUE(sw.contains("don't"));
  EXPECT_FALSE(sw.contains("linux"));
  EXPECT_TRUE(is_content_token("linux", sw));
  EXPECT_FALSE(is_content_token("!", sw));
  EXPECT_FALSE(is_content_token("the", sw));
}

TEST(StopwordTest, FileAndEnvironmentResolution) {
  testing::TempDir dir;
  testing::write_text(dir / "sw.txt", "# comment\nfoo\n\nBar\n");
  const auto from_file = StopwordList::from_file(dir / "sw.txt");
  EXPECT_EQ(from_file.size(), 2u);
  EXPECT_TRUE(from_file.contains("bar"));
  ::setenv(kStopwordsEnv, (dir / "sw.txt").c_str(), 1);
  EXPECT_TRUE(StopwordList::resolve().contains("foo"));
  ::unsetenv(kStopwordsEnv);
  EXPECT_TRUE(StopwordList::resolve().contains("the"));
  EXPECT_THROW(StopwordList::from_file(dir / "missing.txt"), Error);
}

}  // namespace
}  // namespace dtrprof
