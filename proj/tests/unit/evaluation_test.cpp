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

#include "dtrprof/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "dtrprof/error.hpp"
#include "dtrprof/synthetic.hpp"
#include "test_util.hpp"

namespace dtrprof {
namespace {

std::vector<std::string> repeat(const std::string& label, std::size_t n) {
  return std::vector<std::string>(n, label);
}

std::size_t count_in(const std::vector<std::size_t>& fold, const std::vector<std::string>& labels,
                     const std::string& label) {
  return static_cast<std::size_t>(
      std::count_if(fold.begin(), fold.end(), [&](std::size_t i) { return labels[i] == label; }));
}

TEST(KFoldTest, SixAndFourIntoTwoFolds) {
  auto labels = repeat("A", 6);
  const auto b = repeat("B", 4);
  labels.insert(labels.end(), b.begin(), b.end());
  const auto folds = stratified_kfold(labels, 2, 7);
  ASSERT_EQ(folds.size(), 2u);
  for (const auto& f : folds) {
    EXPECT_EQ(count_in(f, labels, "A"), 3u);
    EXPECT_EQ(count_in(f, labels, "B"), 2u);
  }
}

TEST(KFoldTest, SingleFoldHoldsEverything) {
  const auto labels = repeat("A", 5);
  const auto folds = stratified_kfold(labels, 1, 0);
  ASSERT_EQ(folds.size(), 1u);
  EXPECT_EQ(folds[0].size(), 5u);
}

TEST(KFoldTest, OnePerFoldWhenDivisible) {
  const auto folds = stratified_kfold(repeat("A", 10), 10, 3);
  for (const auto& f : folds) EXPECT_EQ(f.size(), 1u);
}

TEST(KFoldTest, RejectsMoreFoldsThanItems) {
  EXPECT_THROW(stratified_kfold(repeat("A", 3), 4, 0), InvalidArgument);
  EXPECT_THROW(stratified_kfold(repeat("A", 3), 0, 0), InvalidArgument);
}

TEST(KFoldTest, PartitionAndBalanceProperties) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> n_items(2, 60);
    std::uniform_int_distribution<int> n_cats(1, 4);
    const std::size_t n = n_items(gen);
    const int cats = n_cats(gen);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(gen() % static_cast<unsigned>(cats)));
    const std::size_t k = 1 + gen() % std::min<std::size_t>(n, 10);
    const auto folds = stratified_kfold(labels, k, gen());
    ASSERT_EQ(folds.size(), k);
    std::vector<int> seen(n, 0);
    for (const auto& f : folds) {
      for (auto i : f) ++seen[i];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    for (const auto& label : std::set<std::string>(labels.begin(), labels.end())) {
      std::size_t lo = n;
      std::size_t hi = 0;
      for (const auto& f : folds) {
        lo = std::min(lo, count_in(f, labels, label));
        hi = std::max(hi, count_in(f, labels, label));
      }
      EXPECT_LE(hi - lo, 1u);
    }
    // Fold sizes stay balanced too, since the fold pointer carries across categories.
    std::size_t smallest = n;
    std::size_t largest = 0;
    for (const auto& f : folds) {
      smallest = std::min(smallest, f.size());
      largest = std::max(largest, f.size());
    }
    EXPECT_LE(largest - smallest, 1u);
  }
}

TEST(KFoldTest, DeterministicGivenSeed) {
  const auto labels = repeat("A", 20);
  EXPECT_EQ(stratified_kfold(labels, 5, 11), stratified_kfold(labels, 5, 11));
  EXPECT_NE(stratified_kfold(labels, 5, 11), stratified_kfold(labels, 5, 12));
}

Corpus small_synthetic(std::uint64_t seed = 2019) {
  SyntheticCorpusConfig cfg;
  cfg.authors_per_category = 20;
  cfg.doc_length = 120;
  cfg.shared_terms = 100;
  cfg.seed = seed;
  return generate_synthetic_corpus(cfg);
}

RepresentationConfig rep_of(RepresentationKind kind) {
  RepresentationConfig rep;
  rep.kind = kind;
  rep.embedding.dim = 10;
  rep.embedding.epochs = 2;
  return rep;
}

TEST(SyntheticTest, ShapeAndDeterminism) {
  const auto c = small_synthetic();
  EXPECT_EQ(c.size(), 40u);
  EXPECT_EQ(c.categories("profile"), (std::vector<std::string>{"c0", "c1"}));
  EXPECT_EQ(c.doc(0).tokens.size(), 120u + 10u);
  const auto again = small_synthetic();
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c.doc(i).text, again.doc(i).text);
}

TEST(CrossValidateTest, DorDimsEqualTrainingSizeAndPredictionsCoverTestAuthors) {
  const auto c = small_synthetic();
  CrossValidationOptions opts;
  opts.folds = 5;
  opts.seed = 3;
  const auto report = cross_validate(c, "profile", rep_of(RepresentationKind::kDor), ClassifierConfig{}, opts);
  ASSERT_EQ(report.folds.size(), 5u);
  std::set<std::string> covered;
  double sum = 0.0;
  for (const auto& f : report.folds) {
    EXPECT_EQ(f.feature_dims, c.size() - f.authors.size());
    EXPECT_EQ(f.predicted.size(), f.authors.size());
    for (std::size_t i = 0; i < f.authors.size(); ++i) {
      EXPECT_TRUE(covered.insert(f.authors[i]).second);
      EXPECT_EQ(f.truth[i], c.doc(*c.find(f.authors[i])).label("profile"));
    }
    sum += f.accuracy;
  }
  EXPECT_EQ(covered.size(), c.size());
  EXPECT_DOUBLE_EQ(report.mean_accuracy, sum / 5.0);
  EXPECT_GE(report.mean_accuracy, 0.9);
}

TEST(CrossValidateTest, EveryRepresentationRuns) {
  const auto c = small_synthetic();
  CrossValidationOptions opts;
  opts.folds = 3;
  opts.seed = 1;
  for (auto kind : {RepresentationKind::kBow, RepresentationKind::kTcor, RepresentationKind::kSsr,
                    RepresentationKind::kW2vTrain}) {
    const auto report = cross_validate(c, "profile", rep_of(kind), ClassifierConfig{}, opts);
    EXPECT_EQ(report.folds.size(), 3u) << to_string(kind);
    EXPECT_EQ(report.representation, std::string(to_string(kind)));
  }
}

TEST(CrossValidateTest, PretrainedEmbeddingsFromFile) {
  testing::TempDir dir;
  const auto c = small_synthetic();
  const auto vocab = build_vocabulary(c);
  std::vector<double> values(vocab.size() * 2);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    values[2 * i] = vocab.term(i).rfind("c0", 0) == 0 ? 1.0 : 0.0;
    values[2 * i + 1] = vocab.term(i).rfind("c1", 0) == 0 ? 1.0 : 0.0;
  }
  write_word2vec(TermMatrix::from_dense(RepKind::kEmbedding, 2, vocab.terms(), {}, values), dir / "v.txt");
  auto rep = rep_of(RepresentationKind::kW2vPretrained);
  rep.pretrained_path = dir / "v.txt";
  CrossValidationOptions opts;
  opts.folds = 4;
  opts.seed = 5;
  const auto report = cross_validate(c, "profile", rep, ClassifierConfig{}, opts);
  EXPECT_EQ(report.folds[0].feature_dims, 2u);
  EXPECT_GE(report.mean_accuracy, 0.9);
}

TEST(CrossValidateTest, ByteIdenticalReportsAcrossRunsAndThreadCounts) {
  const auto c = small_synthetic();
  CrossValidationOptions opts;
  opts.folds = 4;
  opts.seed = 8;
  const auto rep = rep_of(RepresentationKind::kSsr);
  const auto a = to_json(cross_validate(c, "profile", rep, ClassifierConfig{}, opts)).dump();
  const auto b = to_json(cross_validate(c, "profile", rep, ClassifierConfig{}, opts)).dump();
  opts.threads = 3;
  const auto threaded = to_json(cross_validate(c, "profile", rep, ClassifierConfig{}, opts)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, threaded);
}

std::string serialize(const TermMatrix& m) {
  std::ostringstream out;
  write_term_matrix(m, out);
  return out.str();
}

// Rebuilds a corpus where every test document has new text and a flipped label.
Corpus corrupt(const Corpus& c, const std::vector<std::size_t>& test) {
  std::vector<AuthorDoc> docs = c.docs();
  for (auto i : test) {
    auto labels = docs[i].labels;
    for (auto& [task, label] : labels) label = label == "c0" ? "c1" : "c0";
    docs[i] = make_author_doc(docs[i].author_id, "garbage tokens c0topic1 c1topic2 " + std::to_string(i), labels);
  }
  return Corpus(std::move(docs));
}

TEST(LeakageTest, CorruptingTestDocumentsLeavesFoldMatricesIdentical) {
  const auto c = small_synthetic();
  const auto folds = stratified_kfold(c.labels("profile"), 5, 4);
  for (auto kind : {RepresentationKind::kDor, RepresentationKind::kTcor, RepresentationKind::kSsr}) {
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<std::size_t> train;
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      }
      std::sort(train.begin(), train.end());
      const auto clean = fit_representation(c.subset(train), "profile", rep_of(kind), ClassifierConfig{}, 99);
      const auto dirty_corpus = corrupt(c, folds[f]);
      const auto dirty =
          fit_representation(dirty_corpus.subset(train), "profile", rep_of(kind), ClassifierConfig{}, 99);
      ASSERT_TRUE(clean.matrix && dirty.matrix);
      EXPECT_EQ(serialize(*clean.matrix), serialize(*dirty.matrix)) << to_string(kind) << " fold " << f;
      if (kind == RepresentationKind::kDor) EXPECT_EQ(clean.matrix->dims(), train.size());
    }
  }
}

EvalReport fake_report(const std::string& name, std::vector<double> accs, std::uint64_t seed = 1) {
  EvalReport r;
  r.representation = name;
  r.seed = seed;
  for (std::size_t f = 0; f < accs.size(); ++f) {
    FoldResult fr;
    fr.fold = f;
    fr.authors = {"a" + std::to_string(f)};
    fr.predicted = {"x"};
    fr.truth = {"x"};
    fr.accuracy = accs[f];
    r.folds.push_back(fr);
  }
  double s = 0.0;
  for (double a : accs) s += a;
  r.mean_accuracy = s / static_cast<double>(accs.size());
  return r;
}

TEST(SignificanceTest, PairsFoldsAndChecksPartition) {
  auto dor = fake_report("dor", {0.9, 0.8, 0.85, 0.95, 0.9});
  const auto bow = fake_report("bow", {0.8, 0.7, 0.8, 0.8, 0.85});
  add_significance(dor, bow);
  ASSERT_EQ(dor.significance.size(), 1u);
  EXPECT_EQ(dor.significance[0].baseline, "bow");
  EXPECT_EQ(dor.significance[0].test.p_value, 0.0625);
  auto other = fake_report("ssr", {0.9, 0.8, 0.85, 0.95, 0.9}, 2);
  EXPECT_THROW(add_significance(other, bow), InvalidArgument);
}

TEST(ReportTest, JsonCarriesNullForUndefinedPValue) {
  auto dor = fake_report("dor", {0.9, 0.8});
  add_significance(dor, fake_report("bow", {0.9, 0.8}));
  const auto j = to_json(dor);
  EXPECT_TRUE(j["significance"][0]["p_value"].is_null());
  EXPECT_EQ(j["significance"][0]["method"], "insufficient-n");
  EXPECT_EQ(j["representation"], "dor");
  EXPECT_EQ(j["folds"].size(), 2u);
}

TEST(ReportTest, FoldAccuracyCsv) {
  const std::vector<EvalReport> reports{fake_report("bow", {0.5, 1.0}), fake_report("dor", {0.75, 0.25})};
  EXPECT_EQ(fold_accuracy_csv(reports), "fold,bow,dor\n0,0.5,0.75\n1,1,0.25\nmean,0.75,0.5\n");
}

GenreEvaluation genre(const std::string& name, double baseline, double dtr, std::array<double, 6> stats) {
  GenreEvaluation g;
  g.genre = name;
  g.baseline = fake_report("bow", {baseline});
  g.representations = {fake_report("dor", {dtr})};
  g.stats.ttr = stats[0];
  g.stats.ld = stats[1];
  g.stats.sx = stats[2];
  g.stats.shortness = stats[3];
  g.stats.imbalance = stats[4];
  g.stats.hardness = stats[5];
  return g;
}

TEST(CorrelationMapTest, TwoGenresPositiveSlope) {
  const std::vector<GenreEvaluation> genres{genre("blogs", 0.5, 0.6, {1, 1, 1, 1, 1, 1}),
                                            genre("tweets", 0.5, 0.7, {2, 2, 2, 2, 2, 3})};
  const auto map = correlation_map(genres);
  ASSERT_EQ(map.r.size(), 1u);
  for (const auto& v : map.r[0]) EXPECT_NEAR(*v, 1.0, 1e-12);
}

TEST(CorrelationMapTest, ConstantImprovementIsUndefined) {
  const std::vector<GenreEvaluation> genres{genre("a", 0.5, 0.75, {1, 1, 1, 1, 1, 1}),
                                            genre("b", 0.25, 0.5, {2, 2, 2, 2, 2, 2})};
  const auto map = correlation_map(genres);
  for (const auto& v : map.r[0]) EXPECT_FALSE(v);
  EXPECT_EQ(to_csv(map), "representation,TTR,LD,SX,S,In,H\ndor,NA,NA,NA,NA,NA,NA\n");
}

TEST(CorrelationMapTest, FourGenresMatchDirectPearson) {
  const std::vector<GenreEvaluation> genres{genre("a", 0.5, 0.6, {0.1, 0.5, 0.2, 10, 1, 0.3}),
                                            genre("b", 0.6, 0.65, {0.3, 0.4, 0.1, 50, 0, 0.2}),
                                            genre("c", 0.4, 0.6, {0.2, 0.6, 0.3, 20, 4, 0.1}),
                                            genre("d", 0.7, 0.71, {0.5, 0.5, 0.2, 5, 2, 0.4})};
  const auto map = correlation_map(genres);
  std::vector<double> gain;
  for (const auto& g : genres) gain.push_back(g.representations[0].mean_accuracy - g.baseline.mean_accuracy);
  for (std::size_t c = 0; c < 6; ++c) {
    std::vector<double> xs;
    for (const auto& g : genres) xs.push_back(g.stats.values()[c]);
    EXPECT_EQ(map.r[0][c], pearson(xs, gain));
  }
}

TEST(CorrelationMapTest, NeedsTwoGenres) {
  const std::vector<GenreEvaluation> one{genre("a", 0.5, 0.6, {1, 1, 1, 1, 1, 1})};
  EXPECT_THROW(correlation_map(one), InvalidArgument);
}

}  // namespace
}  // namespace dtrprof
