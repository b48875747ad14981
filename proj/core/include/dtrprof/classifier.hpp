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

#ifndef DTRPROF_CLASSIFIER_HPP_
#define DTRPROF_CLASSIFIER_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtrprof/corpus.hpp"

namespace dtrprof {

// Sparse real vector of a fixed dimension.
struct FeatureVector {
  std::size_t dim = 0;
  std::vector<std::uint32_t> indices;  // strictly increasing, < dim
  std::vector<double> values;

  static FeatureVector from_dense(std::span<const double> dense);
  static FeatureVector from_entries(std::size_t dim, std::vector<std::pair<std::uint32_t, double>> entries);

  std::vector<double> to_dense() const;
  double squared_norm() const;

  // Throws InvalidArgument on bad indices or non-finite values.
  void validate() const;
};

enum class BowWeighting { kTf, kBoolean, kTfIdf };

BowWeighting parse_bow_weighting(std::string_view name);
std::string_view to_string(BowWeighting weighting);

// Document frequencies of vocabulary terms over a training set.
struct IdfTable {
  std::size_t documents = 0;
  std::vector<std::size_t> df;

  double idf(std::size_t term) const;  // ln(N / df), 0 for unseen terms
};

IdfTable fit_idf(const Corpus& train, const Vocabulary& vocab);

// Bag of words over the vocabulary: raw counts (kTf), presence (kBoolean),
// or L2-normalized tf * ln(N / df) (kTfIdf, needs idf).
FeatureVector build_bow(const AuthorDoc& doc, const Vocabulary& vocab, BowWeighting weighting,
                        const IdfTable* idf = nullptr);

struct SvmConfig {
  double C = 1.0;
  // Stop once the largest projected-gradient violation of an epoch is below eps.
  double eps = 0.1;
  std::size_t max_epochs = 1000;
  bool bias = true;
  std::uint64_t seed = 1;
  // Record the dual objective after every epoch.
  bool track_objective = false;
};

struct SvmTrainingInfo {
  std::size_t epochs = 0;
  double final_violation = 0.0;
  std::vector<double> dual_objective;  // one entry per epoch when tracked
};

// One-vs-rest linear model. Binary problems keep a single separator whose
// positive side is categories[0].
class SvmModel {
 public:
  SvmModel() = default;
  SvmModel(std::vector<std::string> categories, std::size_t dims, double C, bool bias,
           std::vector<std::vector<double>> weights);

  const std::vector<std::string>& categories() const { return categories_; }
  std::size_t dims() const { return dims_; }
  double C() const { return C_; }
  bool bias() const { return bias_; }
  // Each weight vector has dims() + 1 entries; the last one is the bias.
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<SvmTrainingInfo>& training_info() const { return info_; }
  void set_training_info(std::vector<SvmTrainingInfo> info) { info_ = std::move(info); }

  // One value per category. Throws on dimension mismatch.
  std::vector<double> decision_values(const FeatureVector& x) const;

  // Arg max of decision_values; ties go to the earlier category.
  const std::string& predict(const FeatureVector& x) const;

  friend bool operator==(const SvmModel& a, const SvmModel& b) {
    return a.categories_ == b.categories_ && a.dims_ == b.dims_ && a.C_ == b.C_ && a.bias_ == b.bias_ &&
           a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> categories_;
  std::size_t dims_ = 0;
  double C_ = 1.0;
  bool bias_ = true;
  std::vector<std::vector<double>> weights_;
  std::vector<SvmTrainingInfo> info_;
};

// L2-regularized squared-hinge SVM solved in the dual by coordinate descent
// with a seeded random permutation per epoch. Categories are sorted
// lexicographically. Throws InvalidArgument for fewer than two samples or
// categories, non-finite features, or inconsistent dimensions.
SvmModel train_linear_svm(std::span<const FeatureVector> X, std::span<const std::string> y,
                          const SvmConfig& config = {});

std::vector<std::string> predict(const SvmModel& model, std::span<const FeatureVector> X);

// Textual model container with 17 significant digits; exact round trip.
void write_svm_model(const SvmModel& model, std::ostream& out);
SvmModel read_svm_model(std::istream& in, const std::string& source = "<stream>");

// Per-dimension standardization fitted on training vectors.
class Standardizer {
 public:
  void fit(std::span<const FeatureVector> X);
  FeatureVector transform(const FeatureVector& x) const;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace dtrprof

#endif  // DTRPROF_CLASSIFIER_HPP_
