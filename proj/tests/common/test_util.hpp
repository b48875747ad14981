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

#ifndef DTRPROF_TESTS_COMMON_TEST_UTIL_HPP_
#define DTRPROF_TESTS_COMMON_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "dtrprof/corpus.hpp"

namespace dtrprof::testing {

// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("dtrprof_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline Corpus make_corpus(const std::vector<std::pair<std::string, std::string>>& texts_and_labels,
                          const std::string& task = "gender") {
  std::vector<AuthorDoc> docs;
  int i = 0;
  for (const auto& [text, label] : texts_and_labels) {
    char id[16];
    std::snprintf(id, sizeof id, "u%03d", i++);
    docs.push_back(make_author_doc(id, text, {{task, label}}));
  }
  return Corpus(std::move(docs));
}

// Random micro-corpus over a small alphabet of terms.
inline Corpus random_micro_corpus(std::mt19937_64& gen, std::size_t max_docs, std::size_t max_terms,
                                  std::size_t categories = 2) {
  std::uniform_int_distribution<std::size_t> n_docs(std::max<std::size_t>(2, categories), max_docs);
  std::uniform_int_distribution<std::size_t> n_terms(2, max_terms);
  const std::size_t docs = n_docs(gen);
  const std::size_t terms = n_terms(gen);
  std::uniform_int_distribution<std::size_t> pick(0, terms - 1);
  std::uniform_int_distribution<std::size_t> len(1, 25);
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t d = 0; d < docs; ++d) {
    std::string text;
    const std::size_t l = len(gen);
    for (std::size_t t = 0; t < l; ++t) text += "t" + std::to_string(pick(gen)) + " ";
    rows.emplace_back(text, "c" + std::to_string(d % categories));
  }
  return make_corpus(rows);
}

// "x" and "y" share the contexts c0..c4; "z" only ever sits between d0..d4.
// The two context families never share a document.
inline Corpus identical_context_corpus(std::uint64_t seed, std::size_t docs_per_family = 10,
                                       std::size_t triples_per_doc = 40) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> ctx(0, 4);
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t d = 0; d < docs_per_family; ++d) {
    std::string a;
    std::string b;
    for (std::size_t t = 0; t < triples_per_doc; ++t) {
      const char* middle = (gen() & 1) ? " x " : " y ";
      a += "c" + std::to_string(ctx(gen)) + middle + "c" + std::to_string(ctx(gen)) + " ";
      b += "d" + std::to_string(ctx(gen)) + " z d" + std::to_string(ctx(gen)) + " ";
    }
    rows.emplace_back(a, "a");
    rows.emplace_back(b, "b");
  }
  return make_corpus(rows);
}

// Linearly separable 2-D points: labelled by the side of a fixed line and kept
// only when at least margin away from it.
struct SeparableSet {
  std::vector<std::vector<double>> points;
  std::vector<std::string> labels;
};

inline SeparableSet separable_2d(std::uint64_t seed, std::size_t n = 200, double margin = 0.5) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double wx = 0.6;
  const double wy = -0.8;  // unit normal
  const double b = 0.3;
  SeparableSet set;
  while (set.points.size() < n) {
    const double x = u(gen);
    const double y = u(gen);
    const double s = wx * x + wy * y + b;
    if (std::abs(s) < margin) continue;
    set.points.push_back({x, y});
    set.labels.push_back(s > 0 ? "pos" : "neg");
  }
  return set;
}

}  // namespace dtrprof::testing

#endif  // DTRPROF_TESTS_COMMON_TEST_UTIL_HPP_
