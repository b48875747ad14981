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

#ifndef DTRPROF_BENCH_FIXTURE_HPP_
#define DTRPROF_BENCH_FIXTURE_HPP_

#include <dtrprof/corpus.hpp>
#include <dtrprof/synthetic.hpp>

namespace dtrprof::bench {

inline Corpus synthetic(std::size_t authors_per_category, std::size_t doc_length = 200) {
  SyntheticCorpusConfig cfg;
  cfg.authors_per_category = authors_per_category;
  cfg.doc_length = doc_length;
  cfg.seed = 7;
  return generate_synthetic_corpus(cfg);
}

}  // namespace dtrprof::bench

#endif  // DTRPROF_BENCH_FIXTURE_HPP_
