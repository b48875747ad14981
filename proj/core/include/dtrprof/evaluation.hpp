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

#ifndef DTRPROF_EVALUATION_HPP_
#define DTRPROF_EVALUATION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtrprof/characteristics.hpp"
#include "dtrprof/classifier.hpp"
#include "dtrprof/corpus.hpp"
#include "dtrprof/embeddings.hpp"
#include "dtrprof/representations.hpp"
#include "dtrprof/stats.hpp"
#include "dtrprof/term_matrix.hpp"

namespace dtrprof {

// Splits indices into k disjoint test folds. Members of each category are
// shuffled with the seed and dealt round-robin, continuing the deal across
// categories (in lexicographic order), so every category's per-fold counts
// differ by at most one and so do the fold sizes. Categories smaller than k
// simply leave some folds without members. Requires 1 <= k <= labels.size().
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const std::string> labels, std::size_t k,
                                                       std::uint64_t seed);

enum class RepresentationKind { kBow, kDor, kTcor, kSsr, kW2vTrain, kW2vPretrained };

RepresentationKind parse_representation_kind(std::string_view name);
std::string_view to_string(RepresentationKind kind);

struct RepresentationConfig {
  RepresentationKind kind = RepresentationKind::kBow;
  std::size_t max_terms = 10000;
  std::size_t k_per_class = 3;
  Aggregation aggregation = Aggregation::kMean;
  TcorIdf tcor_idf = TcorIdf::kFeatureTerm;
  LogBase log_base = LogBase::kNatural;
  EmbeddingConfig embedding;
  std::filesystem::path pretrained_path;

  // Report id; the kind name when empty.
  std::string name;
  std::string id() const;
};

struct ClassifierConfig {
  double C = 1.0;
  BowWeighting bow_weighting = BowWeighting::kTf;
  bool standardize = false;
  double eps = 0.1;
  std::size_t max_epochs = 1000;
};

// Everything a fold learns from its training documents before classification.
struct FoldRepresentation {
  Vocabulary vocab;
  std::optional<TermMatrix> matrix;  // absent for BoW
  std::optional<IdfTable> idf;       // BoW with tf-idf weighting
};

// Builds the vocabulary and term matrix from train only. pretrained is the
// embedding table for kW2vPretrained and ignored otherwise.
FoldRepresentation fit_representation(const Corpus& train, const std::string& task,
                                      const RepresentationConfig& rep, const ClassifierConfig& clf,
                                      std::uint64_t seed, const TermMatrix* pretrained = nullptr);

// Feature vectors of docs under a fitted representation.
std::vector<FeatureVector> represent(const FoldRepresentation& fitted, const Corpus& docs,
                                     const RepresentationConfig& rep, const ClassifierConfig& clf);

struct FoldResult {
  std::size_t fold = 0;
  std::vector<std::string> authors;
  std::vector<std::string> predicted;
  std::vector<std::string> truth;
  double accuracy = 0.0;
  std::size_t feature_dims = 0;
};

struct SignificanceResult {
  std::string baseline;
  WilcoxonResult test;
};

struct EvalReport {
  std::string corpus;
  std::string representation;
  std::string task;
  std::size_t folds_requested = 0;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double mean_accuracy = 0.0;
  std::vector<SignificanceResult> significance;

  std::vector<double> fold_accuracies() const;
};

struct CrossValidationOptions {
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  // Folds evaluated concurrently; results do not depend on this.
  std::size_t threads = 1;
  // Embedding table for kW2vPretrained; loaded from rep.pretrained_path when null.
  const TermMatrix* pretrained = nullptr;
  std::string corpus_name;
};

// Stratified k-fold evaluation. Every fold fits its representation and
// classifier on the training documents alone, then scores the test documents.
EvalReport cross_validate(const Corpus& corpus, const std::string& task, const RepresentationConfig& rep,
                          const ClassifierConfig& clf, const CrossValidationOptions& options);

// Pairs fold accuracies of report against baseline (same partition) with a
// Wilcoxon signed-rank test and appends the outcome to report.significance.
void add_significance(EvalReport& report, const EvalReport& baseline, double alpha = 0.05);

nlohmann::json to_json(const EvalReport& report);

// Per-fold accuracy matrix: a "fold" column then one column per report.
std::string fold_accuracy_csv(std::span<const EvalReport> reports);

struct GenreEvaluation {
  std::string genre;
  CollectionStats stats;
  EvalReport baseline;
  std::vector<EvalReport> representations;
};

struct CorrelationMap {
  std::vector<std::string> representations;
  // rows align with representations, columns with CollectionStats::kNames;
  // nullopt where the correlation is undefined.
  std::vector<std::array<std::optional<double>, 6>> r;
};

// Pearson correlation, across genres, between each characteristic and each
// representation's mean accuracy gain over the baseline. Needs at least two
// genres carrying the same representations.
CorrelationMap correlation_map(std::span<const GenreEvaluation> genres);

// Rows are representations, columns the characteristics; "NA" marks
// undefined correlations.
std::string to_csv(const CorrelationMap& map);

}  // namespace dtrprof

#endif  // DTRPROF_EVALUATION_HPP_
