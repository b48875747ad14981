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

#include "dtrprof/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "dtrprof/error.hpp"
#include "dtrprof/representations.hpp"

namespace dtrprof {

std::vector<RankedTerm> top_terms_tfidf(const Corpus& corpus, std::string_view author_id, std::size_t n,
                                        const StopwordList& stopwords) {
  const auto pos = corpus.find(author_id);
  if (!pos) throw InvalidArgument("unknown author '" + std::string(author_id) + "'");

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : corpus.docs()) {
    for (const auto& t : std::set<std::string>(doc.tokens.begin(), doc.tokens.end())) ++df[t];
  }
  std::map<std::string, std::size_t> tf;
  for (const auto& t : corpus.doc(*pos).tokens) {
    if (is_content_token(t, stopwords)) ++tf[t];
  }

  const double docs = static_cast<double>(corpus.size());
  std::vector<RankedTerm> ranked;
  ranked.reserve(tf.size());
  for (const auto& [term, count] : tf) {
    ranked.push_back({term, static_cast<double>(count) * std::log(docs / static_cast<double>(df[term]))});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedTerm& a, const RankedTerm& b) { return a.score > b.score; });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

namespace {

double entropy(const std::map<std::string, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double median_split_information_gain(std::span<const double> values, std::span<const std::string> labels) {
  if (values.size() != labels.size()) throw InvalidArgument("values and labels differ in length");
  if (values.empty()) throw InvalidArgument("information gain of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  std::map<std::string, std::size_t> all, high, low;
  std::size_t n_high = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++all[labels[i]];
    if (values[i] > median) {
      ++high[labels[i]];
      ++n_high;
    } else {
      ++low[labels[i]];
    }
  }
  const std::size_t n_low = n - n_high;
  double conditional = 0.0;
  if (n_high) conditional += static_cast<double>(n_high) / static_cast<double>(n) * entropy(high, n_high);
  if (n_low) conditional += static_cast<double>(n_low) / static_cast<double>(n) * entropy(low, n_low);
  return std::max(0.0, entropy(all, n) - conditional);
}

std::vector<FeatureGain> rank_dor_features(const Corpus& corpus, const std::string& task, std::size_t max_terms) {
  const auto labels = corpus.labels(task);
  const auto vocab = build_vocabulary(corpus, max_terms);
  const auto dor = build_dor(corpus, vocab);

  std::vector<std::vector<double>> vectors;
  vectors.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) vectors.push_back(aggregate_documents(doc, dor, vocab).values);

  std::vector<FeatureGain> gains;
  gains.reserve(dor.dims());
  std::vector<double> column(corpus.size());
  for (std::size_t j = 0; j < dor.dims(); ++j) {
    for (std::size_t a = 0; a < corpus.size(); ++a) column[a] = vectors[a][j];
    gains.push_back({j, corpus.doc(j).author_id, labels[j], median_split_information_gain(column, labels)});
  }
  std::stable_sort(gains.begin(), gains.end(),
                   [](const FeatureGain& a, const FeatureGain& b) { return a.gain > b.gain; });
  return gains;
}

std::vector<RepresentativeColumn> representative_authors(const Corpus& corpus, const std::string& task,
                                                         std::size_t per_category, std::size_t terms_per_author,
                                                         const StopwordList& stopwords, std::size_t max_terms) {
  const auto& categories = corpus.categories(task);
  std::vector<RepresentativeColumn> columns;
  for (const auto& c : categories) columns.push_back({c, {}});
  if (per_category == 0) return columns;

  for (const auto& feature : rank_dor_features(corpus, task, max_terms)) {
    auto it = std::lower_bound(categories.begin(), categories.end(), feature.category);
    auto& column = columns[static_cast<std::size_t>(it - categories.begin())];
    if (column.authors.size() >= per_category) continue;
    column.authors.push_back({feature, top_terms_tfidf(corpus, feature.author_id, terms_per_author, stopwords)});
  }
  return columns;
}

}  // namespace dtrprof
