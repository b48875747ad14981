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

#include "dtrprof/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dtrprof/error.hpp"
#include "dtrprof/random.hpp"

namespace dtrprof {

void EmbeddingConfig::validate() const {
  if (dim == 0) throw InvalidArgument("embedding dim must be positive");
  if (window == 0) throw InvalidArgument("embedding window must be positive");
  if (negatives == 0) throw InvalidArgument("negative sample count must be positive");
  if (epochs == 0) throw InvalidArgument("epoch count must be positive");
  if (!(initial_lr > 0.0)) throw InvalidArgument("initial learning rate must be positive");
  if (min_count == 0) throw InvalidArgument("min_count must be positive");
  if (subsample < 0.0) throw InvalidArgument("subsample threshold must be non-negative");
}

namespace {

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SkipGramResult train_skipgram(const Corpus& corpus, const Vocabulary& vocab, const EmbeddingConfig& cfg) {
  cfg.validate();
  if (vocab.empty()) throw InvalidArgument("cannot train embeddings over an empty vocabulary");
  if (corpus.empty()) throw InvalidArgument("cannot train embeddings on an empty corpus");
  const std::size_t m = vocab.size();
  const std::size_t dim = cfg.dim;

  std::vector<std::uint64_t> counts(m, 0);
  std::vector<std::vector<std::uint32_t>> sequences;
  sequences.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) {
    std::vector<std::uint32_t> seq;
    for (const auto& tok : doc.tokens) {
      if (auto idx = vocab.find(tok)) {
        seq.push_back(static_cast<std::uint32_t>(*idx));
        ++counts[*idx];
      }
    }
    sequences.push_back(std::move(seq));
  }
  std::vector<bool> active(m);
  std::uint64_t total_tokens = 0;
  for (std::size_t i = 0; i < m; ++i) {
    active[i] = counts[i] >= cfg.min_count;
    if (active[i]) total_tokens += counts[i];
  }
  for (auto& seq : sequences) {
    std::erase_if(seq, [&](std::uint32_t w) { return !active[w]; });
  }

  // Cumulative unigram^0.75 distribution for negatives.
  std::vector<double> cumulative(m, 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (active[i]) mass += std::pow(static_cast<double>(counts[i]), 0.75);
    cumulative[i] = mass;
  }

  Rng rng(cfg.seed);
  auto draw_negative = [&]() -> std::uint32_t {
    const double target = rng.uniform() * mass;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative.begin());
  };

  std::vector<double> input(m * dim, 0.0);
  std::vector<double> output(m * dim, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!active[i]) continue;
    for (std::size_t d = 0; d < dim; ++d) {
      input[i * dim + d] = (rng.uniform() - 0.5) / static_cast<double>(dim);
    }
  }

  SkipGramResult result;
  const double planned = static_cast<double>(cfg.epochs) * static_cast<double>(total_tokens) + 1.0;
  const double min_lr = cfg.initial_lr * 1e-4;
  double processed = 0.0;
  std::vector<double> grad(dim);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    for (const auto& full : sequences) {
      const std::vector<std::uint32_t>* seq = &full;
      std::vector<std::uint32_t> kept;
      if (cfg.subsample > 0.0) {
        const double threshold = cfg.subsample * static_cast<double>(total_tokens);
        for (auto w : full) {
          const double f = static_cast<double>(counts[w]);
          const double keep = (std::sqrt(f / threshold) + 1.0) * threshold / f;
          if (keep >= 1.0 || rng.uniform() < keep) kept.push_back(w);
        }
        seq = &kept;
      }
      const std::size_t len = seq->size();
      for (std::size_t pos = 0; pos < len; ++pos) {
        const double lr = std::max(min_lr, cfg.initial_lr * (1.0 - processed / planned));
        processed += 1.0;
        const std::size_t reach = cfg.window - static_cast<std::size_t>(rng.below(cfg.window));
        const std::size_t lo = pos >= reach ? pos - reach : 0;
        const std::size_t hi = std::min(len - 1, pos + reach);
        double* center = &input[(*seq)[pos] * dim];
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const std::uint32_t context = (*seq)[c];
          std::fill(grad.begin(), grad.end(), 0.0);
          for (std::size_t s = 0; s <= cfg.negatives; ++s) {
            std::uint32_t target;
            double label;
            if (s == 0) {
              target = context;
              label = 1.0;
            } else {
              target = draw_negative();
              if (target == context) continue;
              label = 0.0;
            }
            double* out = &output[target * dim];
            const double score = dot(center, out, dim);
            loss -= label > 0 ? log_sigmoid(score) : log_sigmoid(-score);
            const double g = (label - sigmoid(score)) * lr;
            for (std::size_t d = 0; d < dim; ++d) grad[d] += g * out[d];
            for (std::size_t d = 0; d < dim; ++d) out[d] += g * center[d];
          }
          for (std::size_t d = 0; d < dim; ++d) center[d] += grad[d];
          ++pairs;
        }
      }
    }
    result.epoch_loss.push_back(pairs > 0 ? loss / static_cast<double>(pairs) : 0.0);
  }

  result.vectors = TermMatrix::from_dense(RepKind::kEmbedding, dim, vocab.terms(), {}, input);
  return result;
}

TermMatrix read_word2vec(const std::filesystem::path& path, const std::unordered_set<std::string>* keep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embedding file '" + path.string() + "'");
  const std::string source = path.string();
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  std::size_t count = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> count >> dim) || (header >> extra) || dim == 0) {
      throw ParseError(source, 1, "malformed header, expected 'count dim'");
    }
  }

  std::vector<std::string> words;
  std::vector<double> values;
  std::unordered_set<std::string> seen;
  std::size_t rows = 0;
  std::vector<double> row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++rows;
    const char* p = line.c_str();
    while (*p == ' ' || *p == '\t') ++p;
    const char* word_end = p;
    while (*word_end && *word_end != ' ' && *word_end != '\t') ++word_end;
    std::string word(p, word_end);
    p = word_end;
    std::size_t n = 0;
    for (;;) {
      while (*p == ' ' || *p == '\t') ++p;
      if (!*p) break;
      char* end = nullptr;
      double v = std::strtod(p, &end);
      if (end == p || (*end && *end != ' ' && *end != '\t')) {
        throw ParseError(source, line_no, "invalid number in vector of '" + word + "'");
      }
      if (n < dim) row[n] = v;
      ++n;
      p = end;
    }
    if (n != dim) {
      throw ParseError(source, line_no, "expected " + std::to_string(dim) + " values for '" + word +
                                            "', found " + std::to_string(n));
    }
    if (keep && !keep->count(word)) continue;
    if (!seen.insert(word).second) continue;
    words.push_back(std::move(word));
    values.insert(values.end(), row.begin(), row.end());
  }
  if (rows != count) {
    throw ParseError(source, line_no, "header announces " + std::to_string(count) + " vectors, file has " +
                                          std::to_string(rows));
  }
  return TermMatrix::from_dense(RepKind::kEmbedding, dim, std::move(words), {}, values);
}

void write_word2vec(const TermMatrix& vectors, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << vectors.rows() << ' ' << vectors.dims() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const auto& term = vectors.terms()[i];
    if (term.empty() || term.find_first_of(" \t\r\n") != std::string::npos) {
      throw InvalidArgument("term '" + term + "' cannot be written in word2vec text format");
    }
    out << term;
    for (double v : vectors.dense_row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

LoadedEmbeddings project_embeddings(const TermMatrix& table, const Vocabulary& vocab) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < table.rows(); ++i) index.emplace(table.terms()[i], i);
  std::vector<TermMatrix::SparseRow> rows(vocab.size());
  LoadedEmbeddings out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    auto it = index.find(vocab.term(i));
    if (it == index.end()) continue;
    ++out.found;
    auto src = table.row(it->second);
    rows[i].assign(src.begin(), src.end());
  }
  out.coverage = vocab.empty() ? 0.0 : static_cast<double>(out.found) / static_cast<double>(vocab.size());
  out.vectors = TermMatrix(RepKind::kEmbedding, table.dims(), vocab.terms(), {}, std::move(rows));
  return out;
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::unordered_set<std::string> keep(vocab.terms().begin(), vocab.terms().end());
  return project_embeddings(read_word2vec(path, &keep), vocab);
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<Neighbor> nearest_neighbors(const TermMatrix& matrix, const std::string& term, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  const auto& terms = matrix.terms();
  auto it = std::find(terms.begin(), terms.end(), term);
  if (it == terms.end()) throw InvalidArgument("unknown term '" + term + "'");
  const std::size_t q = static_cast<std::size_t>(it - terms.begin());
  const auto query = matrix.dense_row(q);

  std::vector<Neighbor> all;
  all.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == q) continue;
    all.push_back({terms[i], cosine_similarity(query, matrix.dense_row(i))});
  }
  auto by_rank = [](const Neighbor& a, const Neighbor& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.term < b.term;
  };
  const std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), by_rank);
  all.resize(n);
  return all;
}

}  // namespace dtrprof
