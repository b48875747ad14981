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

#include "dtrprof/corpus.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "dtrprof/error.hpp"
#include "test_util.hpp"

namespace dtrprof {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizeTest, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(TokenizeTest, PunctuationIsSeparateToken) {
  EXPECT_EQ(tokenize("I love Linux!"), (Tokens{"i", "love", "linux", "!"}));
}

TEST(TokenizeTest, ApostropheStaysInsideWord) {
  EXPECT_EQ(tokenize("don't stop"), (Tokens{"don't", "stop"}));
  EXPECT_EQ(tokenize("Don’t"), (Tokens{"don't"}));
  EXPECT_EQ(tokenize("bloglovin' rocks"), (Tokens{"bloglovin'", "rocks"}));
}

TEST(TokenizeTest, EachPunctuationCharacterIsItsOwnToken) {
  EXPECT_EQ(tokenize("wow!!! :-)"), (Tokens{"wow", "!", "!", "!", ":", "-", ")"}));
  EXPECT_EQ(tokenize("a,b"), (Tokens{"a", ",", "b"}));
}

TEST(TokenizeTest, DigitsJoinWords) { EXPECT_EQ(tokenize("mp3 2014"), (Tokens{"mp3", "2014"})); }

TEST(TokenizeTest, WhitespaceVariantsDiscarded) {
  EXPECT_EQ(tokenize(" \tA b\n\r　c "), (Tokens{"a", "b", "c"}));
}

TEST(TokenizeTest, NonAsciiLettersLowercased) {
  EXPECT_EQ(tokenize("ÉCOLE ΑΒΓ ПРИ"),
            (Tokens{"école", "αβγ", "при"}));
}

TEST(TokenizeTest, EmojiSequencesStayTogether) {
  // thumbs up + skin tone, then a ZWJ family, then two flags
  const std::string thumbs = "\U0001F44D\U0001F3FD";
  const std::string family = "\U0001F468‍\U0001F469‍\U0001F467";
  const std::string flag = "\U0001F1EA\U0001F1F8";
  EXPECT_EQ(tokenize("ok" + thumbs + family + flag + flag),
            (Tokens{"ok", thumbs, family, flag, flag}));
  EXPECT_EQ(tokenize("\U0001F602\U0001F602"), (Tokens{"\U0001F602", "\U0001F602"}));
}

TEST(TokenizeTest, InvalidUtf8BecomesReplacementCharacter) {
  EXPECT_EQ(tokenize("a\xFF" "b"), (Tokens{"a", "�", "b"}));
}

// Every token re-tokenizes to itself, and joining tokens with spaces
// re-tokenizes to the same sequence.
TEST(TokenizeTest, RetokenizingIsIdempotent) {
  const std::vector<std::string> pieces = {"a", "B", "z9", "'", "’", " ", "\t", "!", ".", ":)",
                                           "É", "Ж", "\U0001F44D", "\U0001F3FB", "‍",
                                           "\U0001F1EB", "\xC3", "\xFF", "中", "-", "️"};
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (int k = 0; k < 30; ++k) text += pieces[pick(gen)];
    const auto tokens = tokenize(text);
    std::string joined;
    for (const auto& t : tokens) {
      EXPECT_EQ(tokenize(t), Tokens{t}) << "token '" << t << "'";
      joined += t + " ";
    }
    EXPECT_EQ(tokenize(joined), tokens);
  }
}

TEST(CorpusTest, SortsByAuthorAndInfersCategories) {
  Corpus c({make_author_doc("b", "x", {{"gender", "male"}}), make_author_doc("a", "y", {{"gender", "female"}}),
            make_author_doc("c", "z", {{"gender", "female"}})});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.doc(0).author_id, "a");
  EXPECT_EQ(c.categories("gender"), (std::vector<std::string>{"female", "male"}));
  EXPECT_EQ(c.category_counts("gender"), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(c.find("b"), std::optional<std::size_t>(1));
  EXPECT_FALSE(c.find("zz"));
}

TEST(CorpusTest, RejectsDuplicateIdsAndMissingLabels) {
  EXPECT_THROW(Corpus({make_author_doc("a", "", {{"t", "x"}}), make_author_doc("a", "", {{"t", "y"}})}),
               InvalidArgument);
  EXPECT_THROW(Corpus({make_author_doc("a", "", {{"t", "x"}}), make_author_doc("b", "", {{"u", "y"}})}),
               InvalidArgument);
}

class PanDirTest : public ::testing::Test {
 protected:
  testing::TempDir dir;
};

TEST_F(PanDirTest, LoadsTruthAndDocuments) {
  testing::write_text(dir / "truth.txt", "u2:::MALE:::25-34\nu1:::female:::18-24\n\n");
  testing::write_text(dir / "u1.txt", "Hello there!");
  testing::write_text(dir / "u2.txt", "\xEF\xBB\xBFGood day.");
  const Corpus c = load_corpus(dir.path(), CorpusFormat::kPanDir);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.doc(0).author_id, "u1");
  EXPECT_EQ(c.doc(0).tokens, (Tokens{"hello", "there", "!"}));
  EXPECT_EQ(c.doc(1).text, "Good day.");
  EXPECT_EQ(c.doc(1).label("gender"), "MALE");
  EXPECT_EQ(c.tasks(), (std::vector<std::string>{"age", "gender"}));
  EXPECT_EQ(c.categories("age"), (std::vector<std::string>{"18-24", "25-34"}));
}

TEST_F(PanDirTest, DocumentWithoutTruthNamesTheAuthor) {
  testing::write_text(dir / "truth.txt", "u1:::female:::18-24\n");
  testing::write_text(dir / "u1.txt", "a");
  testing::write_text(dir / "ghost.txt", "b");
  try {
    load_corpus(dir.path(), CorpusFormat::kPanDir);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST_F(PanDirTest, MalformedTruthLineReportsLineNumber) {
  testing::write_text(dir / "truth.txt", "u1:::female:::18-24\nu2:::male\n");
  testing::write_text(dir / "u1.txt", "a");
  try {
    load_corpus(dir.path(), CorpusFormat::kPanDir);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST_F(PanDirTest, MissingTruthFileIsAnError) {
  testing::write_text(dir / "u1.txt", "a");
  EXPECT_THROW(load_corpus(dir.path(), CorpusFormat::kPanDir), Error);
}

TEST(JsonlTest, TwoRecordsInferTasks) {
  testing::TempDir dir;
  testing::write_text(dir / "c.jsonl",
                      "{\"author_id\":\"b\",\"text\":\"Hi!\",\"gender\":\"male\",\"age\":\"25-34\"}\n"
                      "{\"author_id\":\"a\",\"text\":\"Yo\",\"gender\":\"female\",\"age\":\"18-24\"}\n");
  const Corpus c = load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.tasks(), (std::vector<std::string>{"age", "gender"}));
  EXPECT_EQ(c.doc(1).tokens, (Tokens{"hi", "!"}));
}

TEST(JsonlTest, BadLineReportsLineNumber) {
  testing::TempDir dir;
  testing::write_text(dir / "c.jsonl", "{\"author_id\":\"a\",\"text\":\"x\",\"g\":\"m\"}\n\n{not json}\n");
  try {
    load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(JsonlTest, InconsistentTasksRejected) {
  testing::TempDir dir;
  testing::write_text(dir / "c.jsonl",
                      "{\"author_id\":\"a\",\"text\":\"x\",\"g\":\"m\"}\n{\"author_id\":\"b\",\"text\":\"x\"}\n");
  EXPECT_THROW(load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl), ParseError);
}

TEST(JsonlTest, SaveThenLoadIsIdentical) {
  testing::TempDir dir;
  std::mt19937_64 gen(3);
  const Corpus c = testing::random_micro_corpus(gen, 8, 10);
  save_corpus_jsonl(c, dir / "c.jsonl");
  const Corpus back = load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl);
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back.doc(i).author_id, c.doc(i).author_id);
    EXPECT_EQ(back.doc(i).text, c.doc(i).text);
    EXPECT_EQ(back.doc(i).tokens, c.doc(i).tokens);
    EXPECT_EQ(back.doc(i).labels, c.doc(i).labels);
  }
}

TEST(LoadCorpusTest, NonexistentPath) {
  EXPECT_THROW(load_corpus("/nonexistent/dtrprof", CorpusFormat::kJsonl), Error);
}

TEST(VocabularyTest, SortsByFrequency) {
  const Corpus c = testing::make_corpus({{"a a a b b c a a", "x"}, {"b", "y"}});
  const auto v = build_vocabulary(c, 2);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(v.freq(0), 5u);
  EXPECT_EQ(v.freq(1), 3u);
}

TEST(VocabularyTest, TiesBreakLexicographically) {
  const Corpus c = testing::make_corpus({{"b a b a a b", "x"}});
  EXPECT_EQ(build_vocabulary(c, 1).terms(), (std::vector<std::string>{"a"}));
}

TEST(VocabularyTest, NoTruncationWhenLimitExceedsDistinctTokens) {
  const Corpus c = testing::make_corpus({{"z y x y", "x"}});
  EXPECT_EQ(build_vocabulary(c, 100).terms(), (std::vector<std::string>{"y", "x", "z"}));
}

TEST(VocabularyTest, PropertiesOnRandomCorpora) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus c = testing::random_micro_corpus(gen, 6, 30);
    const auto full = build_vocabulary(c, std::numeric_limits<std::size_t>::max());
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      sum += full.freq(i);
      EXPECT_EQ(full.find(full.term(i)), std::optional<std::size_t>(i));
      if (i > 0) {
        EXPECT_TRUE(full.freq(i - 1) > full.freq(i) ||
                    (full.freq(i - 1) == full.freq(i) && full.term(i - 1) < full.term(i)));
      }
    }
    EXPECT_EQ(sum, c.total_tokens());
    for (std::size_t k : {1u, 3u, 7u}) {
      const auto truncated = build_vocabulary(c, k);
      const std::size_t n = std::min<std::size_t>(k, full.size());
      EXPECT_EQ(truncated.terms(), std::vector<std::string>(full.terms().begin(), full.terms().begin() + n));
    }
  }
}

TEST(VocabularyTest, ReloadingIsDeterministic) {
  testing::TempDir dir;
  std::mt19937_64 gen(5);
  save_corpus_jsonl(testing::random_micro_corpus(gen, 8, 20), dir / "c.jsonl");
  const auto a = load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl);
  const auto b = load_corpus(dir / "c.jsonl", CorpusFormat::kJsonl);
  EXPECT_EQ(build_vocabulary(a).terms(), build_vocabulary(b).terms());
  std::ostringstream sa, sb;
  for (const auto& d : a.docs()) sa << d.author_id << d.text;
  for (const auto& d : b.docs()) sb << d.author_id << d.text;
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CountTermsTest, SkipsOutOfVocabulary) {
  const Corpus c = testing::make_corpus({{"a b a q", "x"}});
  const Vocabulary v({"a", "b"}, {2, 1});
  const auto counts = count_terms(c.doc(0), v);
  EXPECT_EQ(counts.in_vocab_tokens, 3u);
  EXPECT_EQ(counts.total_tokens, 4u);
  ASSERT_EQ(counts.entries.size(), 2u);
  EXPECT_EQ(counts.entries[0], (std::pair<std::uint32_t, std::uint32_t>{0, 2}));
}

}  // namespace
}  // namespace dtrprof
