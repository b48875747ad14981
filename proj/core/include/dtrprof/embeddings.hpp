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

#ifndef DTRPROF_EMBEDDINGS_HPP_
#define DTRPROF_EMBEDDINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "dtrprof/corpus.hpp"
#include "dtrprof/term_matrix.hpp"

namespace dtrprof {

struct EmbeddingConfig {
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_lr = 0.025;
  std::size_t min_count = 1;
  // Frequent-word subsampling threshold; 0 disables it.
  double subsample = 0.0;
  std::uint64_t seed = 1;

  // Throws InvalidArgument for non-positive sizes or rates.
  void validate() const;
};

struct SkipGramResult {
  TermMatrix vectors;
  // Mean negative-sampling loss per epoch, measured before each update.
  std::vector<double> epoch_loss;
};

// Skip-gram with negative sampling, single-threaded and deterministic given
// cfg.seed. Windows do not cross document boundaries; out-of-vocabulary
// tokens and terms below min_count are skipped, the latter keep a zero
// vector. Negatives follow the unigram^0.75 distribution and the learning
// rate decays linearly to initial_lr * 1e-4.
SkipGramResult train_skipgram(const Corpus& corpus, const Vocabulary& vocab,
                              const EmbeddingConfig& cfg);

// Reads a textual word2vec file ("count dim" header, then "token v1 .. vdim"
// per line). When keep is given, only those words are retained. The first
// occurrence of a repeated word wins.
TermMatrix read_word2vec(const std::filesystem::path& path,
                         const std::unordered_set<std::string>* keep = nullptr);

// Writes the textual word2vec format with 17 significant digits.
void write_word2vec(const TermMatrix& vectors, const std::filesystem::path& path);

struct LoadedEmbeddings {
  TermMatrix vectors;
  std::size_t found = 0;
  double coverage = 0.0;
};

// Rows of table (a matrix over its own word list) mapped onto vocab order.
// Missing terms get the zero vector.
LoadedEmbeddings project_embeddings(const TermMatrix& table, const Vocabulary& vocab);

LoadedEmbeddings load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab);

struct Neighbor {
  std::string term;
  double similarity = 0.0;
};

// Top-k terms by cosine similarity to term, excluding term itself; ties are
// broken lexicographically. Zero vectors have similarity 0 to everything.
std::vector<Neighbor> nearest_neighbors(const TermMatrix& matrix, const std::string& term, std::size_t k);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace dtrprof

#endif  // DTRPROF_EMBEDDINGS_HPP_
