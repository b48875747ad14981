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

#include "dtrprof/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dtrprof/error.hpp"
#include "dtrprof/random.hpp"

namespace dtrprof {

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const std::string> labels, std::size_t k,
                                                       std::uint64_t seed) {
  if (k == 0) throw InvalidArgument("number of folds must be positive");
  if (k > labels.size()) {
    throw InvalidArgument("cannot split " + std::to_string(labels.size()) + " items into " + std::to_string(k) +
                          " folds");
  }
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (auto& [category, indices] : members) {
    rng.shuffle(indices);
    for (auto i : indices) {
      folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

RepresentationKind parse_representation_kind(std::string_view name) {
  if (name == "bow") return RepresentationKind::kBow;
  if (name == "dor") return RepresentationKind::kDor;
  if (name == "tcor") return RepresentationKind::kTcor;
  if (name == "ssr") return RepresentationKind::kSsr;
  if (name == "w2v-train") return RepresentationKind::kW2vTrain;
  if (name == "w2v-pretrained") return RepresentationKind::kW2vPretrained;
  throw InvalidArgument("unknown representation '" + std::string(name) +
                        "' (expected bow, dor, tcor, ssr, w2v-train or w2v-pretrained)");
}

std::string_view to_string(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::kBow: return "bow";
    case RepresentationKind::kDor: return "dor";
    case RepresentationKind::kTcor: return "tcor";
    case RepresentationKind::kSsr: return "ssr";
    case RepresentationKind::kW2vTrain: return "w2v-train";
    case RepresentationKind::kW2vPretrained: return "w2v-pretrained";
  }
  return "?";
}

std::string RepresentationConfig::id() const { return name.empty() ? std::string(to_string(kind)) : name; }

FoldRepresentation fit_representation(const Corpus& train, const std::string& task,
                                      const RepresentationConfig& rep, const ClassifierConfig& clf,
                                      std::uint64_t seed, const TermMatrix* pretrained) {
  FoldRepresentation fitted;
  fitted.vocab = build_vocabulary(train, rep.max_terms);
  switch (rep.kind) {
    case RepresentationKind::kBow:
      if (clf.bow_weighting == BowWeighting::kTfIdf) fitted.idf = fit_idf(train, fitted.vocab);
      break;
    case RepresentationKind::kDor:
      fitted.matrix = build_dor(train, fitted.vocab, rep.log_base);
      break;
    case RepresentationKind::kTcor:
      fitted.matrix = build_tcor(train, fitted.vocab, rep.tcor_idf, rep.log_base);
      break;
    case RepresentationKind::kSsr: {
      ClusteringOptions options;
      options.k_per_class = rep.k_per_class;
      options.seed = seed;
      const auto assignment = cluster_subprofiles(train, task, fitted.vocab, options);
      fitted.matrix = build_ssr(train, fitted.vocab, assignment);
      break;
    }
    case RepresentationKind::kW2vTrain: {
      EmbeddingConfig cfg = rep.embedding;
      cfg.seed = seed;
      fitted.matrix = train_skipgram(train, fitted.vocab, cfg).vectors;
      break;
    }
    case RepresentationKind::kW2vPretrained:
      if (pretrained == nullptr) throw InvalidArgument("w2v-pretrained needs a loaded embedding table");
      fitted.matrix = project_embeddings(*pretrained, fitted.vocab).vectors;
      break;
  }
  return fitted;
}

std::vector<FeatureVector> represent(const FoldRepresentation& fitted, const Corpus& docs,
                                     const RepresentationConfig& rep, const ClassifierConfig& clf) {
  std::vector<FeatureVector> out;
  out.reserve(docs.size());
  for (const auto& doc : docs.docs()) {
    if (rep.kind == RepresentationKind::kBow) {
      out.push_back(build_bow(doc, fitted.vocab, clf.bow_weighting, fitted.idf ? &*fitted.idf : nullptr));
    } else {
      out.push_back(
          FeatureVector::from_dense(aggregate_documents(doc, *fitted.matrix, fitted.vocab, rep.aggregation).values));
    }
  }
  return out;
}

std::vector<double> EvalReport::fold_accuracies() const {
  std::vector<double> out;
  out.reserve(folds.size());
  for (const auto& f : folds) out.push_back(f.accuracy);
  return out;
}

namespace {

FoldResult run_fold(const Corpus& corpus, const std::string& task, const RepresentationConfig& rep,
                    const ClassifierConfig& clf, const std::vector<std::size_t>& test_idx, std::size_t fold,
                    std::uint64_t seed, const TermMatrix* pretrained) {
  std::vector<std::size_t> train_idx;
  std::size_t t = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (t < test_idx.size() && test_idx[t] == i) {
      ++t;
    } else {
      train_idx.push_back(i);
    }
  }
  const Corpus train = corpus.subset(train_idx);
  const Corpus test = corpus.subset(test_idx);

  const auto fitted = fit_representation(train, task, rep, clf, derive_seed(seed, 1000 + fold), pretrained);
  auto x_train = represent(fitted, train, rep, clf);
  auto x_test = represent(fitted, test, rep, clf);
  if (clf.standardize) {
    Standardizer scaler;
    scaler.fit(x_train);
    for (auto& x : x_train) x = scaler.transform(x);
    for (auto& x : x_test) x = scaler.transform(x);
  }

  SvmConfig svm;
  svm.C = clf.C;
  svm.eps = clf.eps;
  svm.max_epochs = clf.max_epochs;
  svm.seed = derive_seed(seed, 2000 + fold);
  const auto y_train = train.labels(task);
  const auto model = train_linear_svm(x_train, y_train, svm);

  FoldResult result;
  result.fold = fold;
  result.truth = test.labels(task);
  result.predicted = predict(model, x_test);
  for (const auto& doc : test.docs()) result.authors.push_back(doc.author_id);
  result.accuracy = accuracy(result.predicted, result.truth);
  result.feature_dims = x_train.front().dim;
  return result;
}

}  // namespace

EvalReport cross_validate(const Corpus& corpus, const std::string& task, const RepresentationConfig& rep,
                          const ClassifierConfig& clf, const CrossValidationOptions& options) {
  if (!corpus.has_task(task)) throw InvalidArgument("corpus has no task '" + task + "'");
  const auto labels = corpus.labels(task);
  const auto folds = stratified_kfold(labels, options.folds, derive_seed(options.seed, 0));

  std::optional<TermMatrix> loaded;
  const TermMatrix* pretrained = options.pretrained;
  if (rep.kind == RepresentationKind::kW2vPretrained && pretrained == nullptr) {
    if (rep.pretrained_path.empty()) throw InvalidArgument("w2v-pretrained needs pretrained_path");
    std::unordered_set<std::string> keep;
    for (const auto& doc : corpus.docs()) keep.insert(doc.tokens.begin(), doc.tokens.end());
    loaded = read_word2vec(rep.pretrained_path, &keep);
    pretrained = &*loaded;
  }

  EvalReport report;
  report.corpus = options.corpus_name;
  report.representation = rep.id();
  report.task = task;
  report.folds_requested = options.folds;
  report.seed = options.seed;
  report.folds.resize(folds.size());

  auto job = [&](std::size_t f) {
    return run_fold(corpus, task, rep, clf, folds[f], f, options.seed, pretrained);
  };
  const std::size_t threads = std::max<std::size_t>(1, options.threads);
  if (threads == 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) report.folds[f] = job(f);
  } else {
    for (std::size_t start = 0; start < folds.size(); start += threads) {
      std::vector<std::future<FoldResult>> pending;
      for (std::size_t f = start; f < std::min(folds.size(), start + threads); ++f) {
        pending.push_back(std::async(std::launch::async, job, f));
      }
      for (std::size_t p = 0; p < pending.size(); ++p) report.folds[start + p] = pending[p].get();
    }
  }

  double sum = 0.0;
  for (const auto& f : report.folds) sum += f.accuracy;
  report.mean_accuracy = sum / static_cast<double>(report.folds.size());
  return report;
}

void add_significance(EvalReport& report, const EvalReport& baseline, double alpha) {
  if (report.folds.size() != baseline.folds.size() || report.seed != baseline.seed) {
    throw InvalidArgument("significance needs reports over the same fold partition");
  }
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    if (report.folds[f].authors != baseline.folds[f].authors) {
      throw InvalidArgument("significance needs reports over the same fold partition");
    }
  }
  const auto a = report.fold_accuracies();
  const auto b = baseline.fold_accuracies();
  report.significance.push_back({baseline.representation, wilcoxon_signed_rank(a, b, alpha)});
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : report.folds) {
    nlohmann::json preds = nlohmann::json::array();
    for (std::size_t i = 0; i < f.authors.size(); ++i) {
      preds.push_back({{"author_id", f.authors[i]}, {"predicted", f.predicted[i]}, {"truth", f.truth[i]}});
    }
    folds.push_back({{"fold", f.fold}, {"accuracy", f.accuracy}, {"feature_dims", f.feature_dims},
                     {"predictions", std::move(preds)}});
  }
  nlohmann::json sig = nlohmann::json::array();
  for (const auto& s : report.significance) {
    sig.push_back({{"baseline", s.baseline},
                   {"statistic", s.test.statistic},
                   {"p_value", number_or_null(s.test.p_value)},
                   {"significant", s.test.significant},
                   {"n", s.test.n},
                   {"method", to_string(s.test.method)}});
  }
  return {{"corpus", report.corpus},
          {"representation", report.representation},
          {"task", report.task},
          {"folds_requested", report.folds_requested},
          {"seed", report.seed},
          {"mean_accuracy", report.mean_accuracy},
          {"folds", std::move(folds)},
          {"significance", std::move(sig)}};
}

std::string fold_accuracy_csv(std::span<const EvalReport> reports) {
  std::ostringstream out;
  out << "fold";
  std::size_t rows = 0;
  for (const auto& r : reports) {
    out << ',' << r.representation;
    rows = std::max(rows, r.folds.size());
  }
  out << '\n';
  for (std::size_t f = 0; f < rows; ++f) {
    out << f;
    for (const auto& r : reports) {
      out << ',';
      if (f < r.folds.size()) out << shortest(r.folds[f].accuracy);
    }
    out << '\n';
  }
  out << "mean";
  for (const auto& r : reports) out << ',' << shortest(r.mean_accuracy);
  out << '\n';
  return out.str();
}

CorrelationMap correlation_map(std::span<const GenreEvaluation> genres) {
  if (genres.size() < 2) throw InvalidArgument("a correlation map needs at least two genres");
  CorrelationMap map;
  for (const auto& r : genres.front().representations) map.representations.push_back(r.representation);
  for (const auto& g : genres) {
    std::vector<std::string> names;
    for (const auto& r : g.representations) names.push_back(r.representation);
    if (names != map.representations) {
      throw InvalidArgument("genre '" + g.genre + "' does not carry the same representations");
    }
  }
  for (std::size_t r = 0; r < map.representations.size(); ++r) {
    std::vector<double> gain;
    for (const auto& g : genres) gain.push_back(g.representations[r].mean_accuracy - g.baseline.mean_accuracy);
    std::array<std::optional<double>, 6> row;
    for (std::size_t c = 0; c < CollectionStats::kNames.size(); ++c) {
      std::vector<double> xs;
      for (const auto& g : genres) xs.push_back(g.stats.values()[c]);
      row[c] = pearson(xs, gain);
    }
    map.r.push_back(row);
  }
  return map;
}

std::string to_csv(const CorrelationMap& map) {
  std::ostringstream out;
  out << "representation";
  for (auto name : CollectionStats::kNames) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < map.representations.size(); ++r) {
    out << map.representations[r];
    for (const auto& v : map.r[r]) out << ',' << (v ? shortest(*v) : std::string("NA"));
    out << '\n';
  }
  return out.str();
}

}  // namespace dtrprof
