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

#include "dtrprof/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "dtrprof/error.hpp"
#include "dtrprof/random.hpp"

namespace dtrprof {

Corpus generate_synthetic_corpus(const SyntheticCorpusConfig& config) {
  if (config.categories == 0 || config.authors_per_category == 0 || config.doc_length == 0 ||
      config.shared_terms == 0) {
    throw InvalidArgument("synthetic corpus sizes must be positive");
  }
  if (config.topical_rate < 0.0 || config.topical_rate > 1.0) {
    throw InvalidArgument("topical_rate must lie in [0, 1]");
  }
  if (config.topical_rate > 0.0 && config.topical_terms == 0) {
    throw InvalidArgument("topical_rate > 0 needs topical terms");
  }

  std::vector<double> zipf(config.shared_terms);
  double mass = 0.0;
  for (std::size_t k = 0; k < zipf.size(); ++k) {
    mass += 1.0 / static_cast<double>(k + 1);
    zipf[k] = mass;
  }

  Rng rng(config.seed);
  std::vector<AuthorDoc> docs;
  const int width = static_cast<int>(std::to_string(config.categories * config.authors_per_category).size());
  std::size_t serial = 0;
  for (std::size_t c = 0; c < config.categories; ++c) {
    const std::string category = "c" + std::to_string(c);
    for (std::size_t a = 0; a < config.authors_per_category; ++a) {
      std::string text;
      for (std::size_t t = 0; t < config.doc_length; ++t) {
        if (t) text.push_back(' ');
        if (rng.uniform() < config.topical_rate) {
          text += category + "topic" + std::to_string(rng.below(config.topical_terms));
        } else {
          const double u = rng.uniform() * mass;
          auto it = std::upper_bound(zipf.begin(), zipf.end(), u);
          if (it == zipf.end()) --it;
          text += "w" + std::to_string(it - zipf.begin());
        }
        if (t % 12 == 11) text.push_back('.');
      }
      char id[32];
      std::snprintf(id, sizeof id, "author%0*zu", width, serial++);
      docs.push_back(make_author_doc(id, std::move(text), {{config.task, category}}));
    }
  }
  return Corpus(std::move(docs));
}

}  // namespace dtrprof
