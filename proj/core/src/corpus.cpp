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

#include "dtrprof/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dtrprof/error.hpp"

namespace dtrprof {
namespace fs = std::filesystem;

const std::string& AuthorDoc::label(const std::string& task) const {
  auto it = labels.find(task);
  if (it == labels.end()) {
    throw InvalidArgument("document '" + author_id + "' has no label for task '" + task + "'");
  }
  return it->second;
}

AuthorDoc make_author_doc(std::string author_id, std::string text,
                          std::map<std::string, std::string> labels) {
  AuthorDoc doc;
  doc.author_id = std::move(author_id);
  doc.text = std::move(text);
  doc.tokens = tokenize(doc.text);
  doc.labels = std::move(labels);
  return doc;
}

Corpus::Corpus(std::vector<AuthorDoc> docs) : docs_(std::move(docs)) {
  std::sort(docs_.begin(), docs_.end(),
            [](const AuthorDoc& a, const AuthorDoc& b) { return a.author_id < b.author_id; });
  for (std::size_t i = 1; i < docs_.size(); ++i) {
    if (docs_[i].author_id == docs_[i - 1].author_id) {
      throw InvalidArgument("duplicate author id '" + docs_[i].author_id + "'");
    }
  }
  if (docs_.empty()) return;

  for (const auto& [task, value] : docs_.front().labels) tasks_.push_back(task);
  for (const auto& doc : docs_) {
    if (doc.labels.size() != tasks_.size() ||
        !std::all_of(tasks_.begin(), tasks_.end(),
                     [&](const std::string& t) { return doc.labels.count(t) > 0; })) {
      throw InvalidArgument("document '" + doc.author_id +
                            "' does not carry the same task labels as the rest of the corpus");
    }
  }
  for (const auto& task : tasks_) {
    std::set<std::string> distinct;
    for (const auto& doc : docs_) distinct.insert(doc.labels.at(task));
    categories_[task] = std::vector<std::string>(distinct.begin(), distinct.end());
  }
}

bool Corpus::has_task(const std::string& task) const { return categories_.count(task) > 0; }

const std::vector<std::string>& Corpus::categories(const std::string& task) const {
  auto it = categories_.find(task);
  if (it == categories_.end()) throw InvalidArgument("corpus has no task '" + task + "'");
  return it->second;
}

std::vector<std::string> Corpus::labels(const std::string& task) const {
  if (!has_task(task)) throw InvalidArgument("corpus has no task '" + task + "'");
  std::vector<std::string> out;
  out.reserve(docs_.size());
  for (const auto& doc : docs_) out.push_back(doc.labels.at(task));
  return out;
}

std::vector<std::size_t> Corpus::category_counts(const std::string& task) const {
  const auto& cats = categories(task);
  std::vector<std::size_t> counts(cats.size(), 0);
  for (const auto& doc : docs_) {
    auto it = std::lower_bound(cats.begin(), cats.end(), doc.labels.at(task));
    ++counts[static_cast<std::size_t>(it - cats.begin())];
  }
  return counts;
}

std::optional<std::size_t> Corpus::find(std::string_view author_id) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), author_id,
                             [](const AuthorDoc& d, std::string_view id) { return d.author_id < id; });
  if (it == docs_.end() || it->author_id != author_id) return std::nullopt;
  return static_cast<std::size_t>(it - docs_.begin());
}

Corpus Corpus::subset(std::span<const std::size_t> indices) const {
  std::vector<AuthorDoc> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(docs_.at(i));
  return Corpus(std::move(picked));
}

std::size_t Corpus::total_tokens() const {
  std::size_t n = 0;
  for (const auto& doc : docs_) n += doc.tokens.size();
  return n;
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "pan-dir") return CorpusFormat::kPanDir;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  throw InvalidArgument("unknown corpus format '" + std::string(name) + "' (expected pan-dir or jsonl)");
}

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::kPanDir ? "pan-dir" : "jsonl";
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
  return text;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

Corpus load_pan_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
  const fs::path truth_path = dir / "truth.txt";
  if (!fs::exists(truth_path)) throw Error("missing truth file '" + truth_path.string() + "'");

  std::map<std::string, std::map<std::string, std::string>> truth;
  std::istringstream lines(read_file(truth_path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::string_view rest(line);
    for (;;) {
      auto sep = rest.find(":::");
      fields.push_back(trim(rest.substr(0, sep)));
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 3);
    }
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(truth_path.string(), line_no, "expected 'author_id:::gender:::age'");
    }
    if (!truth.emplace(fields[0], std::map<std::string, std::string>{{"gender", fields[1]},
                                                                      {"age", fields[2]}})
             .second) {
      throw ParseError(truth_path.string(), line_no, "duplicate author id '" + fields[0] + "'");
    }
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt" &&
        entry.path().filename() != "truth.txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<AuthorDoc> docs;
  std::set<std::string> seen;
  for (const auto& file : files) {
    const std::string id = file.stem().string();
    auto it = truth.find(id);
    if (it == truth.end()) throw Error("no truth entry for author '" + id + "'");
    seen.insert(id);
    docs.push_back(make_author_doc(id, read_file(file), it->second));
  }
  for (const auto& [id, labels] : truth) {
    if (!seen.count(id)) throw Error("no document file for author '" + id + "' listed in truth.txt");
  }
  return Corpus(std::move(docs));
}

Corpus load_jsonl(const fs::path& path) {
  std::istringstream lines(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<AuthorDoc> docs;
  std::optional<std::set<std::string>> task_keys;
  std::set<std::string> ids;
  const std::string source = path.string();
  while (std::getline(lines, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
    if (!record.contains("author_id") || !record["author_id"].is_string()) {
      throw ParseError(source, line_no, "missing string field 'author_id'");
    }
    if (!record.contains("text") || !record["text"].is_string()) {
      throw ParseError(source, line_no, "missing string field 'text'");
    }
    std::map<std::string, std::string> labels;
    std::set<std::string> keys;
    for (const auto& [key, value] : record.items()) {
      if (key == "author_id" || key == "text") continue;
      if (value.is_string()) {
        labels[key] = value.get<std::string>();
      } else if (value.is_number_integer()) {
        labels[key] = value.dump();
      } else {
        throw ParseError(source, line_no, "label '" + key + "' must be a string");
      }
      keys.insert(key);
    }
    if (!task_keys) {
      task_keys = keys;
    } else if (*task_keys != keys) {
      throw ParseError(source, line_no, "record has a different set of task labels");
    }
    auto id = record["author_id"].get<std::string>();
    if (!ids.insert(id).second) throw ParseError(source, line_no, "duplicate author id '" + id + "'");
    docs.push_back(make_author_doc(std::move(id), record["text"].get<std::string>(), std::move(labels)));
  }
  return Corpus(std::move(docs));
}

}  // namespace

Corpus load_corpus(const fs::path& path, CorpusFormat format) {
  if (!fs::exists(path)) throw Error("corpus path '" + path.string() + "' does not exist");
  return format == CorpusFormat::kPanDir ? load_pan_dir(path) : load_jsonl(path);
}

void save_corpus_jsonl(const Corpus& corpus, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  for (const auto& doc : corpus.docs()) {
    nlohmann::json record = nlohmann::json::object();
    record["author_id"] = doc.author_id;
    record["text"] = doc.text;
    for (const auto& [task, label] : doc.labels) record[task] = label;
    out << record.dump() << '\n';
  }
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> freq)
    : terms_(std::move(terms)), freq_(std::move(freq)) {
  if (terms_.size() != freq_.size()) throw InvalidArgument("vocabulary terms and frequencies differ in length");
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw InvalidArgument("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::find(const std::string& term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const Corpus& corpus, std::size_t max_terms) {
  if (max_terms == 0) throw InvalidArgument("max_terms must be positive");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : corpus.docs()) {
    for (const auto& tok : doc.tokens) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (ranked.size() > max_terms) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(max_terms),
                      ranked.end(), by_rank);
    ranked.resize(max_terms);
  } else {
    std::sort(ranked.begin(), ranked.end(), by_rank);
  }
  std::vector<std::string> terms;
  std::vector<std::uint64_t> freq;
  terms.reserve(ranked.size());
  freq.reserve(ranked.size());
  for (auto& [term, count] : ranked) {
    terms.push_back(std::move(term));
    freq.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(freq));
}

TermCounts count_terms(const AuthorDoc& doc, const Vocabulary& vocab) {
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  TermCounts out;
  out.total_tokens = doc.tokens.size();
  for (const auto& tok : doc.tokens) {
    if (auto idx = vocab.find(tok)) {
      ++counts[static_cast<std::uint32_t>(*idx)];
      ++out.in_vocab_tokens;
    }
  }
  out.entries.assign(counts.begin(), counts.end());
  std::sort(out.entries.begin(), out.entries.end());
  return out;
}

}  // namespace dtrprof
