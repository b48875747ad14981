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

#ifndef DTRPROF_CORPUS_HPP_
#define DTRPROF_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dtrprof {

// Splits UTF-8 text into lowercased tokens. Maximal runs of letters, digits
// and apostrophes form word tokens. Every other visible character is a token
// of its own, except that an emoji together with its modifiers, variation
// selectors and ZWJ continuations forms a single token. Whitespace is
// discarded. Invalid byte sequences become U+FFFD tokens. The typographic
// apostrophe U+2019 is folded to ASCII '.
std::vector<std::string> tokenize(std::string_view text);

// True when the token contains at least one letter or digit.
bool is_word_token(std::string_view token);

// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text);

// All posts of one author, concatenated.
struct AuthorDoc {
  std::string author_id;
  std::string text;
  std::vector<std::string> tokens;
  std::map<std::string, std::string> labels;

  // Label for a task; throws InvalidArgument when the task is absent.
  const std::string& label(const std::string& task) const;
};

// Builds a document and tokenizes its text.
AuthorDoc make_author_doc(std::string author_id, std::string text,
                          std::map<std::string, std::string> labels);

// Immutable labeled collection, ordered by author id.
class Corpus {
 public:
  Corpus() = default;

  // Sorts by author id. Throws InvalidArgument on duplicate ids or when
  // documents disagree on the set of tasks.
  explicit Corpus(std::vector<AuthorDoc> docs);

  const std::vector<AuthorDoc>& docs() const { return docs_; }
  const AuthorDoc& doc(std::size_t i) const { return docs_.at(i); }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  const std::vector<std::string>& tasks() const { return tasks_; }
  bool has_task(const std::string& task) const;

  // Distinct categories of a task in lexicographic order.
  const std::vector<std::string>& categories(const std::string& task) const;

  // Per-document label of a task, in document order.
  std::vector<std::string> labels(const std::string& task) const;

  // Number of documents per category, aligned with categories(task).
  std::vector<std::size_t> category_counts(const std::string& task) const;

  std::optional<std::size_t> find(std::string_view author_id) const;

  // Documents at the given positions, as a new corpus.
  Corpus subset(std::span<const std::size_t> indices) const;

  std::size_t total_tokens() const;

 private:
  std::vector<AuthorDoc> docs_;
  std::vector<std::string> tasks_;
  std::map<std::string, std::vector<std::string>> categories_;
};

enum class CorpusFormat { kPanDir, kJsonl };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat format);

// Reads a corpus from disk.
//
// pan-dir: a directory with truth.txt (lines "author_id:::gender:::age")
// and one <author_id>.txt file per author.
// jsonl: one JSON object per line with "author_id", "text" and one string
// valued key per task.
//
// Throws ParseError with the line number for malformed lines and Error for
// documents without a truth entry (or truth entries without a document).
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Writes a corpus in jsonl format.
void save_corpus_jsonl(const Corpus& corpus, const std::filesystem::path& path);

// Frequency-ranked term list with dense integer indices.
class Vocabulary {
 public:
  Vocabulary() = default;

  // terms must already be in rank order; freq is aligned with terms.
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> freq);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::uint64_t freq(std::size_t index) const { return freq_.at(index); }
  std::optional<std::size_t> find(const std::string& term) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> freq_;
  std::unordered_map<std::string, std::size_t> index_;
};

// The max_terms most frequent tokens of the corpus, by descending
// collection frequency with lexicographic tie-break.
Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_terms = 10000);

// Per-document counts of vocabulary terms.
struct TermCounts {
  // (term index, count) sorted by term index, counts > 0.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  std::size_t in_vocab_tokens = 0;
  std::size_t total_tokens = 0;
};

TermCounts count_terms(const AuthorDoc& doc, const Vocabulary& vocab);

}  // namespace dtrprof

#endif  // DTRPROF_CORPUS_HPP_
