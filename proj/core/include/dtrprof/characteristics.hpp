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

#ifndef DTRPROF_CHARACTERISTICS_HPP_
#define DTRPROF_CHARACTERISTICS_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dtrprof/corpus.hpp"

namespace dtrprof {

// Environment variable naming a stopword file used instead of the bundled list.
inline constexpr const char* kStopwordsEnv = "DTRPROF_STOPWORDS";

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::vector<std::string> words);

  // Bundled English list (lowercase, apostrophes as ASCII ').
  static StopwordList english();

  // One word per line; blank lines and lines starting with '#' are ignored.
  static StopwordList from_file(const std::filesystem::path& path);

  // explicit_path if given, else the file named by DTRPROF_STOPWORDS if
  // set, else the bundled list.
  static StopwordList resolve(const std::optional<std::filesystem::path>& explicit_path = std::nullopt);

  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// A token that carries content: has a letter or digit and is not a stopword.
bool is_content_token(const std::string& token, const StopwordList& stopwords);

struct CollectionStats {
  double ttr = 0.0;         // distinct tokens / tokens
  double ld = 0.0;          // content tokens / tokens
  double sx = 0.0;          // share of distinct terms longer than mean + 1 sd
  double shortness = 0.0;   // mean tokens per document
  double imbalance = 0.0;   // population sd of (n_c - N / q)
  double hardness = 0.0;    // mean pairwise Jaccard of category vocabularies

  static constexpr std::array<std::string_view, 6> kNames{"TTR", "LD", "SX", "S", "In", "H"};
  std::array<double, 6> values() const { return {ttr, ld, sx, shortness, imbalance, hardness}; }
};

// Lexical density treats non-stopword word tokens as content terms. SX is
// measured over distinct terms with lengths in code points. Hardness is 0
// for a task with a single category.
CollectionStats collection_stats(const Corpus& corpus, const std::string& task, const StopwordList& stopwords);

}  // namespace dtrprof

#endif  // DTRPROF_CHARACTERISTICS_HPP_
