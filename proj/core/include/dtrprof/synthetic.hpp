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

#ifndef DTRPROF_SYNTHETIC_HPP_
#define DTRPROF_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "dtrprof/corpus.hpp"

namespace dtrprof {

// Labeled corpus with a shared Zipf-distributed background vocabulary and a
// block of topical terms used exclusively by each category.
struct SyntheticCorpusConfig {
  std::size_t categories = 2;
  std::size_t authors_per_category = 100;
  std::size_t topical_terms = 30;
  std::size_t shared_terms = 300;
  std::size_t doc_length = 200;
  // Share of an author's tokens drawn from the category's topical terms.
  double topical_rate = 0.1;
  std::string task = "profile";
  std::uint64_t seed = 2019;
};

// Categories are named c0, c1, ...; topical terms of category c are
// "c<c>topic<k>", shared terms "w<k>". A period closes every twelfth token.
Corpus generate_synthetic_corpus(const SyntheticCorpusConfig& config);

}  // namespace dtrprof

#endif  // DTRPROF_SYNTHETIC_HPP_
