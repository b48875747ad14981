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

#ifndef DTRPROF_REPRESENTATIONS_HPP_
#define DTRPROF_REPRESENTATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dtrprof/corpus.hpp"
#include "dtrprof/term_matrix.hpp"

namespace dtrprof {

// Base of the logarithms in the DOR and TCOR weights.
enum class LogBase { kNatural, kTwo, kTen };

LogBase parse_log_base(std::string_view name);

// Which term's co-occurrence breadth discounts a TCOR weight w(i, j):
// the feature term t_j (default) or the row term t_i.
enum class TcorIdf { kFeatureTerm, kRowTerm };

TcorIdf parse_tcor_idf(std::string_view name);
std::string_view to_string(TcorIdf mode);

// Document occurrence representation. Row i holds, for every training
// document j,
//   w(i, j) = (1 + log #(t_i, d_j)) * log(|V| / N_j)
// where N_j is the number of distinct vocabulary terms in d_j, and 0 when
// t_i does not occur in d_j. Feature names are the training author ids.
// Documents without vocabulary terms give an all-zero column and a warning.
TermMatrix build_dor(const Corpus& train, const Vocabulary& vocab,
                     LogBase base = LogBase::kNatural);

// Term co-occurrence representation over the vocabulary:
//   w(i, j) = (1 + log #(t_i, t_j)) * log(|V| / V_x)
// #(t_i, t_j) counts documents containing both terms. V_x is the number of
// other vocabulary terms sharing a document with t_j (kFeatureTerm) or with
// t_i (kRowTerm). The diagonal is zero.
TermMatrix build_tcor(const Corpus& train, const Vocabulary& vocab,
                      TcorIdf mode = TcorIdf::kFeatureTerm, LogBase base = LogBase::kNatural);

struct SubprofileAssignment {
  std::string task;
  // author id -> index into subclass_labels.
  std::map<std::string, std::size_t> mapping;
  // "category/cluster" in (category, cluster) order.
  std::vector<std::string> subclass_labels;
  // Parent category of each subclass.
  std::vector<std::string> subclass_categories;
};

struct ClusteringOptions {
  std::size_t k_per_class = 3;
  std::size_t restarts = 20;
  std::size_t max_iterations = 100;
  std::uint64_t seed = 0;
};

// Splits every category of the task into min(k_per_class, size) subclasses
// with k-means++ seeded k-means on L2-normalized term-frequency vectors.
SubprofileAssignment cluster_subprofiles(const Corpus& train, const std::string& task,
                                         const Vocabulary& vocab, const ClusteringOptions& options);

// One subclass per category.
SubprofileAssignment category_assignment(const Corpus& train, const std::string& task);

// Subprofile specific representation. Raw association of term i with
// subclass k is sum over documents d in k of log2(1 + tf(t_i, d) / len(d)),
// len(d) being the document's token count. Each subclass column is then
// divided by its total, and each term row by its total, so supported rows
// are probability distributions over subclasses.
TermMatrix build_ssr(const Corpus& train, const Vocabulary& vocab,
                     const SubprofileAssignment& assignment);

// The two SSR normalizations applied to a dense raw matrix (terms x
// subclasses, row-major). Throws Error when a subclass column sums to zero.
std::vector<double> normalize_ssr(std::vector<double> raw, std::size_t terms, std::size_t subclasses);

enum class Aggregation { kMean, kTfWeighted };

Aggregation parse_aggregation(std::string_view name);
std::string_view to_string(Aggregation aggregation);

struct DocVector {
  std::vector<double> values;
  std::string source_author;
};

// d = sum over in-vocabulary terms of alpha_i * w_i. With kMean, alpha_i is
// the term's share of the in-vocabulary tokens; with kTfWeighted it is
// 1 + ln #(t_i, d) normalized to sum to one. A document without vocabulary
// tokens yields the zero vector and a warning.
DocVector aggregate_documents(const AuthorDoc& doc, const TermMatrix& matrix,
                              const Vocabulary& vocab, Aggregation weighting = Aggregation::kMean);

}  // namespace dtrprof

#endif  // DTRPROF_REPRESENTATIONS_HPP_
