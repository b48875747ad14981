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

#include "dtrprof/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dtrprof/diagnostics.hpp"
#include "dtrprof/error.hpp"
#include "dtrprof/random.hpp"

namespace dtrprof {
namespace {

double log_in(double x, LogBase base) {
  switch (base) {
    case LogBase::kNatural: return std::log(x);
    case LogBase::kTwo: return std::log2(x);
    case LogBase::kTen: return std::log10(x);
  }
  return std::log(x);
}

// 1 + log(count) for a positive count, 0 otherwise.
double damped(std::size_t count, LogBase base) {
  return count > 0 ? 1.0 + log_in(static_cast<double>(count), base) : 0.0;
}

void require_training_input(const Corpus& train, const Vocabulary& vocab) {
  if (train.empty()) throw InvalidArgument("training corpus is empty");
  if (vocab.empty()) throw InvalidArgument("vocabulary is empty");
}

std::vector<std::string> author_ids(const Corpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (const auto& doc : corpus.docs()) ids.push_back(doc.author_id);
  return ids;
}

}  // namespace

LogBase parse_log_base(std::string_view name) {
  if (name == "e" || name == "natural") return LogBase::kNatural;
  if (name == "2") return LogBase::kTwo;
  if (name == "10") return LogBase::kTen;
  throw InvalidArgument("unknown log base '" + std::string(name) + "' (expected e, 2 or 10)");
}

TcorIdf parse_tcor_idf(std::string_view name) {
  if (name == "feature-term") return TcorIdf::kFeatureTerm;
  if (name == "row-term") return TcorIdf::kRowTerm;
  throw InvalidArgument("unknown tcor_idf mode '" + std::string(name) + "'");
}

std::string_view to_string(TcorIdf mode) {
  return mode == TcorIdf::kFeatureTerm ? "feature-term" : "row-term";
}

TermMatrix build_dor(const Corpus& train, const Vocabulary& vocab, LogBase base) {
  require_training_input(train, vocab);
  const double vocab_size = static_cast<double>(vocab.size());
  std::vector<TermMatrix::SparseRow> rows(vocab.size());
  for (std::size_t j = 0; j < train.size(); ++j) {
    const auto counts = count_terms(train.doc(j), vocab);
    if (counts.entries.empty()) {
      warn("DOR: document '" + train.doc(j).author_id +
           "' has no vocabulary terms; its feature column is zero");
      continue;
    }
    const double idf = log_in(vocab_size / static_cast<double>(counts.entries.size()), base);
    for (const auto& [term, count] : counts.entries) {
      rows[term].push_back({static_cast<std::uint32_t>(j), damped(count, base) * idf});
    }
  }
  return TermMatrix(RepKind::kDor, train.size(), vocab.terms(), author_ids(train), std::move(rows));
}

TermMatrix build_tcor(const Corpus& train, const Vocabulary& vocab, TcorIdf mode, LogBase base) {
  require_training_input(train, vocab);
  const std::size_t m = vocab.size();

  // Distinct vocabulary terms per document, and the inverted lists.
  std::vector<std::vector<std::uint32_t>> doc_terms(train.size());
  std::vector<std::vector<std::uint32_t>> term_docs(m);
  for (std::size_t d = 0; d < train.size(); ++d) {
    for (const auto& [term, count] : count_terms(train.doc(d), vocab).entries) {
      doc_terms[d].push_back(term);
      term_docs[term].push_back(static_cast<std::uint32_t>(d));
    }
  }

  // Visits the co-occurrence counts of row i, excluding the diagonal.
  std::vector<std::uint32_t> counter(m, 0);
  std::vector<std::uint32_t> touched;
  auto co_occurrences = [&](std::size_t i, auto&& visit) {
    touched.clear();
    for (auto d : term_docs[i]) {
      for (auto j : doc_terms[d]) {
        if (j == i) continue;
        if (counter[j]++ == 0) touched.push_back(j);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      visit(j, counter[j]);
      counter[j] = 0;
    }
  };

  // Number of other terms each term shares a document with.
  std::vector<std::size_t> breadth(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    co_occurrences(i, [&](std::uint32_t, std::uint32_t) { ++breadth[i]; });
  }

  const double vocab_size = static_cast<double>(m);
  std::vector<TermMatrix::SparseRow> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    co_occurrences(i, [&](std::uint32_t j, std::uint32_t count) {
      const std::size_t v = mode == TcorIdf::kFeatureTerm ? breadth[j] : breadth[i];
      rows[i].push_back({j, damped(count, base) * log_in(vocab_size / static_cast<double>(v), base)});
    });
  }
  return TermMatrix(RepKind::kTcor, m, vocab.terms(), vocab.terms(), std::move(rows));
}

namespace {

struct SparsePoint {
  std::vector<std::pair<std::uint32_t, double>> entries;
  double squared_norm = 0.0;
};

SparsePoint normalized_tf(const AuthorDoc& doc, const Vocabulary& vocab) {
  SparsePoint p;
  double norm = 0.0;
  const auto counts = count_terms(doc, vocab);
  for (const auto& [term, count] : counts.entries) norm += static_cast<double>(count) * count;
  norm = std::sqrt(norm);
  for (const auto& [term, count] : counts.entries) {
    const double v = static_cast<double>(count) / norm;
    p.entries.emplace_back(term, v);
    p.squared_norm += v * v;
  }
  return p;
}

double squared_distance(const SparsePoint& p, const std::vector<double>& centroid, double centroid_norm) {
  double dot = 0.0;
  for (const auto& [j, v] : p.entries) dot += v * centroid[j];
  return std::max(0.0, p.squared_norm - 2.0 * dot + centroid_norm);
}

double squared_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

struct KMeansRun {
  std::vector<std::size_t> assignment;
  double inertia = std::numeric_limits<double>::infinity();
};

// Lloyd iterations from k-means++ seeds. Ties go to the lower cluster index.
KMeansRun kmeans_once(const std::vector<SparsePoint>& points, std::size_t k, std::size_t dim,
                      std::size_t max_iterations, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  auto dense = [&](const SparsePoint& p) {
    std::vector<double> c(dim, 0.0);
    for (const auto& [j, v] : p.entries) c[j] = v;
    return c;
  };

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t first = static_cast<std::size_t>(rng.below(n));
  centroids.push_back(dense(points[first]));
  while (centroids.size() < k) {
    const auto& last = centroids.back();
    const double last_norm = squared_norm(last);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points[i], last, last_norm));
      total += nearest[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i];
        if (acc > target && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centroids.push_back(dense(points[pick]));
  }

  KMeansRun run;
  run.assignment.assign(n, k);
  std::vector<double> norms(k);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t c = 0; c < k; ++c) norms[c] = squared_norm(centroids[c]);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        double d = squared_distance(points[i], centroids[c], norms[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.assignment[i] != best) {
        run.assignment[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<std::size_t> sizes(k, 0);
    for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& c = centroids[run.assignment[i]];
      ++sizes[run.assignment[i]];
      for (const auto& [j, v] : points[i].entries) c[j] += v;
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) continue;
      for (double& x : centroids[c]) x /= static_cast<double>(sizes[c]);
    }
  }

  // Every cluster must own at least one point: move the point farthest from
  // its centroid (within a cluster of size > 1) into each empty cluster.
  for (;;) {
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : run.assignment) ++sizes[a];
    auto empty = std::find(sizes.begin(), sizes.end(), 0u);
    if (empty == sizes.end()) break;
    std::size_t donor = n;
    double worst = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = run.assignment[i];
      if (sizes[c] < 2) continue;
      double d = squared_distance(points[i], centroids[c], squared_norm(centroids[c]));
      if (d > worst) {
        worst = d;
        donor = i;
      }
    }
    const auto target = static_cast<std::size_t>(empty - sizes.begin());
    run.assignment[donor] = target;
    centroids[target] = dense(points[donor]);
  }

  // Final centroids and inertia.
  std::vector<std::size_t> sizes(k, 0);
  for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    ++sizes[run.assignment[i]];
    for (const auto& [j, v] : points[i].entries) centroids[run.assignment[i]][j] += v;
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (double& x : centroids[c]) x /= static_cast<double>(sizes[c]);
    norms[c] = squared_norm(centroids[c]);
  }
  run.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    run.inertia += squared_distance(points[i], centroids[run.assignment[i]], norms[run.assignment[i]]);
  }
  return run;
}

// Renumbers clusters by the position of their first member.
void canonicalize(std::vector<std::size_t>& assignment, std::size_t k) {
  std::vector<std::size_t> remap(k, k);
  std::size_t next = 0;
  for (auto& a : assignment) {
    if (remap[a] == k) remap[a] = next++;
    a = remap[a];
  }
}

}  // namespace

SubprofileAssignment cluster_subprofiles(const Corpus& train, const std::string& task,
                                         const Vocabulary& vocab, const ClusteringOptions& options) {
  if (options.k_per_class == 0) throw InvalidArgument("k_per_class must be positive");
  if (options.restarts == 0) throw InvalidArgument("clustering needs at least one restart");
  const auto& categories = train.categories(task);

  SubprofileAssignment out;
  out.task = task;
  for (std::size_t ci = 0; ci < categories.size(); ++ci) {
    const auto& category = categories[ci];
    std::vector<std::size_t> members;
    for (std::size_t d = 0; d < train.size(); ++d) {
      if (train.doc(d).label(task) == category) members.push_back(d);
    }
    const std::size_t k = std::min(options.k_per_class, members.size());

    std::vector<std::size_t> best(members.size(), 0);
    if (k > 1) {
      std::vector<SparsePoint> points;
      points.reserve(members.size());
      for (auto d : members) points.push_back(normalized_tf(train.doc(d), vocab));
      Rng rng(derive_seed(options.seed, ci));
      double best_inertia = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < options.restarts; ++r) {
        auto run = kmeans_once(points, k, vocab.size(), options.max_iterations, rng);
        if (run.inertia < best_inertia) {
          best_inertia = run.inertia;
          best = std::move(run.assignment);
        }
      }
      canonicalize(best, k);
    }

    const std::size_t base = out.subclass_labels.size();
    for (std::size_t c = 0; c < k; ++c) {
      out.subclass_labels.push_back(category + "/" + std::to_string(c));
      out.subclass_categories.push_back(category);
    }
    for (std::size_t m = 0; m < members.size(); ++m) {
      out.mapping[train.doc(members[m]).author_id] = base + best[m];
    }
  }
  return out;
}

SubprofileAssignment category_assignment(const Corpus& train, const std::string& task) {
  ClusteringOptions options;
  options.k_per_class = 1;
  return cluster_subprofiles(train, task, Vocabulary{}, options);
}

std::vector<double> normalize_ssr(std::vector<double> raw, std::size_t terms, std::size_t subclasses) {
  if (raw.size() != terms * subclasses) throw InvalidArgument("raw SSR matrix has the wrong size");
  for (std::size_t k = 0; k < subclasses; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < terms; ++i) total += raw[i * subclasses + k];
    if (!(total > 0.0)) {
      throw Error("SSR: subclass " + std::to_string(k) + " has zero total weight");
    }
    for (std::size_t i = 0; i < terms; ++i) raw[i * subclasses + k] /= total;
  }
  for (std::size_t i = 0; i < terms; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < subclasses; ++k) total += raw[i * subclasses + k];
    if (total == 0.0) continue;
    for (std::size_t k = 0; k < subclasses; ++k) raw[i * subclasses + k] /= total;
  }
  return raw;
}

TermMatrix build_ssr(const Corpus& train, const Vocabulary& vocab,
                     const SubprofileAssignment& assignment) {
  require_training_input(train, vocab);
  const std::size_t q = assignment.subclass_labels.size();
  if (q == 0) throw InvalidArgument("SSR needs at least one subclass");
  std::vector<double> raw(vocab.size() * q, 0.0);
  for (const auto& doc : train.docs()) {
    auto it = assignment.mapping.find(doc.author_id);
    if (it == assignment.mapping.end()) {
      throw InvalidArgument("subprofile assignment does not cover author '" + doc.author_id + "'");
    }
    const std::size_t k = it->second;
    if (k >= q) throw InvalidArgument("subprofile index out of range for '" + doc.author_id + "'");
    const auto counts = count_terms(doc, vocab);
    const double len = static_cast<double>(counts.total_tokens);
    for (const auto& [term, count] : counts.entries) {
      raw[term * q + k] += std::log2(1.0 + static_cast<double>(count) / len);
    }
  }
  auto values = normalize_ssr(std::move(raw), vocab.size(), q);
  return TermMatrix::from_dense(RepKind::kSsr, q, vocab.terms(), assignment.subclass_labels, values);
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "tf-weighted") return Aggregation::kTfWeighted;
  throw InvalidArgument("unknown aggregation '" + std::string(name) + "' (expected mean or tf-weighted)");
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::kMean ? "mean" : "tf-weighted";
}

DocVector aggregate_documents(const AuthorDoc& doc, const TermMatrix& matrix, const Vocabulary& vocab,
                              Aggregation weighting) {
  if (matrix.rows() != vocab.size()) {
    throw InvalidArgument("term matrix was not built on this vocabulary");
  }
  DocVector out{std::vector<double>(matrix.dims(), 0.0), doc.author_id};
  const auto counts = count_terms(doc, vocab);
  if (counts.entries.empty()) {
    warn("document '" + doc.author_id + "' has no vocabulary tokens; using the zero vector");
    return out;
  }
  std::vector<double> alpha;
  alpha.reserve(counts.entries.size());
  double total = 0.0;
  for (const auto& [term, count] : counts.entries) {
    const double a = weighting == Aggregation::kMean ? static_cast<double>(count)
                                                     : 1.0 + std::log(static_cast<double>(count));
    alpha.push_back(a);
    total += a;
  }
  for (std::size_t e = 0; e < counts.entries.size(); ++e) {
    matrix.add_row(counts.entries[e].first, alpha[e] / total, out.values);
  }
  return out;
}

}  // namespace dtrprof
