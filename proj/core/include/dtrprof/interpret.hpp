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

#ifndef DTRPROF_INTERPRET_HPP_
#define DTRPROF_INTERPRET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtrprof/characteristics.hpp"
#include "dtrprof/corpus.hpp"

namespace dtrprof {

struct RankedTerm {
  std::string term;
  double score = 0.0;
};

// An author's n highest tf-idf terms, tf being the author's counts and idf
// ln(N / df) over the corpus. Stopwords and tokens without letters or digits
// are left out; ties are broken lexicographically.
std::vector<RankedTerm> top_terms_tfidf(const Corpus& corpus, std::string_view author_id, std::size_t n,
                                        const StopwordList& stopwords);

// Information gain (bits) of the labels given a binary split of values at
// their median (value > median versus the rest).
double median_split_information_gain(std::span<const double> values, std::span<const std::string> labels);

struct FeatureGain {
  std::size_t feature = 0;
  std::string author_id;
  std::string category;
  double gain = 0.0;
};

// Builds DOR over the whole corpus, represents every author with it, and
// ranks the DOR features (authors) by median-split information gain,
// highest first, ties in author order.
std::vector<FeatureGain> rank_dor_features(const Corpus& corpus, const std::string& task,
                                           std::size_t max_terms = 10000);

struct RepresentativeAuthor {
  FeatureGain feature;
  std::vector<RankedTerm> top_terms;
};

struct RepresentativeColumn {
  std::string category;
  std::vector<RepresentativeAuthor> authors;
};

// Per category, the per_category highest-gain DOR features whose author
// belongs to that category, each with its top tf-idf terms.
std::vector<RepresentativeColumn> representative_authors(const Corpus& corpus, const std::string& task,
                                                         std::size_t per_category, std::size_t terms_per_author,
                                                         const StopwordList& stopwords,
                                                         std::size_t max_terms = 10000);

}  // namespace dtrprof

#endif  // DTRPROF_INTERPRET_HPP_
