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

#include "dtrprof/characteristics.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "dtrprof/error.hpp"

namespace dtrprof {
namespace {

// Function words of English, including the contracted forms the tokenizer keeps.
constexpr std::string_view kEnglish[] = {
    "a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and", "any", "are",
    "aren", "aren't", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "couldn", "couldn't", "d", "did", "didn", "didn't", "do", "does", "doesn",
    "doesn't", "doing", "don", "don't", "down", "during", "each", "few", "for", "from", "further", "had",
    "hadn", "hadn't", "has", "hasn", "hasn't", "have", "haven", "haven't", "having", "he", "he'd",
    "he'll", "he's", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "i'd", "i'll",
    "i'm", "i've", "if", "in", "into", "is", "isn", "isn't", "it", "it'd", "it'll", "it's", "its",
    "itself", "just", "ll", "m", "ma", "me", "mightn", "mightn't", "more", "most", "mustn", "mustn't",
    "my", "myself", "needn", "needn't", "no", "nor", "not", "now", "o", "of", "off", "on", "once", "only",
    "or", "other", "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shan", "shan't",
    "she", "she'd", "she'll", "she's", "should", "should've", "shouldn", "shouldn't", "so", "some",
    "such", "t", "than", "that", "that'll", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "they'd", "they'll", "they're", "they've", "this", "those", "through", "to",
    "too", "under", "until", "up", "ve", "very", "was", "wasn", "wasn't", "we", "we'd", "we'll", "we're",
    "we've", "were", "weren", "weren't", "what", "when", "where", "which", "while", "who", "whom", "why",
    "will", "with", "won", "won't", "wouldn", "wouldn't", "y", "you", "you'd", "you'll", "you're",
    "you've", "your", "yours", "yourself", "yourselves",
};

}  // namespace

StopwordList::StopwordList(std::vector<std::string> words) : words_(words.begin(), words.end()) {}

StopwordList StopwordList::english() {
  return StopwordList(std::vector<std::string>(std::begin(kEnglish), std::end(kEnglish)));
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file '" + path.string() + "'");
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    for (auto& tok : tokenize(line.substr(b, e - b + 1))) words.push_back(std::move(tok));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::resolve(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return from_file(*explicit_path);
  if (const char* env = std::getenv(kStopwordsEnv); env && *env) return from_file(env);
  return english();
}

bool is_content_token(const std::string& token, const StopwordList& stopwords) {
  return is_word_token(token) && !stopwords.contains(token);
}

CollectionStats collection_stats(const Corpus& corpus, const std::string& task, const StopwordList& stopwords) {
  if (corpus.empty()) throw InvalidArgument("collection statistics need a non-empty corpus");
  const auto& categories = corpus.categories(task);

  CollectionStats s;
  std::set<std::string> distinct;
  std::map<std::string, std::set<std::string>> category_vocab;
  std::size_t tokens = 0;
  std::size_t content = 0;
  for (const auto& doc : corpus.docs()) {
    auto& vocab = category_vocab[doc.label(task)];
    for (const auto& tok : doc.tokens) {
      ++tokens;
      if (is_content_token(tok, stopwords)) ++content;
      distinct.insert(tok);
      vocab.insert(tok);
    }
  }

  if (tokens > 0) {
    s.ttr = static_cast<double>(distinct.size()) / static_cast<double>(tokens);
    s.ld = static_cast<double>(content) / static_cast<double>(tokens);

    std::vector<double> lengths;
    lengths.reserve(distinct.size());
    for (const auto& t : distinct) lengths.push_back(static_cast<double>(utf8_length(t)));
    double mean = 0.0;
    for (double l : lengths) mean += l;
    mean /= static_cast<double>(lengths.size());
    double var = 0.0;
    for (double l : lengths) var += (l - mean) * (l - mean);
    const double threshold = mean + std::sqrt(var / static_cast<double>(lengths.size()));
    std::size_t sophisticated = 0;
    for (double l : lengths) sophisticated += l > threshold;
    s.sx = static_cast<double>(sophisticated) / static_cast<double>(lengths.size());
  }
  s.shortness = static_cast<double>(tokens) / static_cast<double>(corpus.size());

  const auto counts = corpus.category_counts(task);
  const double ideal = static_cast<double>(corpus.size()) / static_cast<double>(counts.size());
  double sq = 0.0;
  for (auto c : counts) sq += (static_cast<double>(c) - ideal) * (static_cast<double>(c) - ideal);
  s.imbalance = std::sqrt(sq / static_cast<double>(counts.size()));

  double jaccard_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < categories.size(); ++a) {
    for (std::size_t b = a + 1; b < categories.size(); ++b) {
      const auto& va = category_vocab[categories[a]];
      const auto& vb = category_vocab[categories[b]];
      std::size_t shared = 0;
      for (const auto& t : va) shared += vb.count(t);
      const std::size_t uni = va.size() + vb.size() - shared;
      jaccard_sum += uni > 0 ? static_cast<double>(shared) / static_cast<double>(uni) : 0.0;
      ++pairs;
    }
  }
  s.hardness = pairs > 0 ? jaccard_sum / static_cast<double>(pairs) : 0.0;
  return s;
}

}  // namespace dtrprof
