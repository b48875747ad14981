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

#include "dtrprof/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "dtrprof/error.hpp"
#include "dtrprof/random.hpp"

namespace dtrprof {

FeatureVector FeatureVector::from_dense(std::span<const double> dense) {
  FeatureVector v;
  v.dim = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) {
      v.indices.push_back(static_cast<std::uint32_t>(i));
      v.values.push_back(dense[i]);
    }
  }
  return v;
}

FeatureVector FeatureVector::from_entries(std::size_t dim,
                                          std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end());
  FeatureVector v;
  v.dim = dim;
  for (const auto& [i, x] : entries) {
    if (!v.indices.empty() && v.indices.back() == i) throw InvalidArgument("duplicate feature index");
    if (x == 0.0) continue;
    v.indices.push_back(i);
    v.values.push_back(x);
  }
  v.validate();
  return v;
}

std::vector<double> FeatureVector::to_dense() const {
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < indices.size(); ++k) out[indices[k]] = values[k];
  return out;
}

double FeatureVector::squared_norm() const {
  double s = 0.0;
  for (double x : values) s += x * x;
  return s;
}

void FeatureVector::validate() const {
  if (indices.size() != values.size()) throw InvalidArgument("feature vector index/value size mismatch");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= dim) throw InvalidArgument("feature index out of range");
    if (k > 0 && indices[k] <= indices[k - 1]) throw InvalidArgument("feature indices must increase");
    if (!std::isfinite(values[k])) throw InvalidArgument("feature vector contains NaN or Inf");
  }
}

BowWeighting parse_bow_weighting(std::string_view name) {
  if (name == "tf") return BowWeighting::kTf;
  if (name == "boolean") return BowWeighting::kBoolean;
  if (name == "tfidf") return BowWeighting::kTfIdf;
  throw InvalidArgument("unknown BoW weighting '" + std::string(name) + "' (expected tf, boolean or tfidf)");
}

std::string_view to_string(BowWeighting weighting) {
  switch (weighting) {
    case BowWeighting::kTf: return "tf";
    case BowWeighting::kBoolean: return "boolean";
    case BowWeighting::kTfIdf: return "tfidf";
  }
  return "?";
}

double IdfTable::idf(std::size_t term) const {
  if (term >= df.size() || df[term] == 0) return 0.0;
  return std::log(static_cast<double>(documents) / static_cast<double>(df[term]));
}

IdfTable fit_idf(const Corpus& train, const Vocabulary& vocab) {
  IdfTable table;
  table.documents = train.size();
  table.df.assign(vocab.size(), 0);
  for (const auto& doc : train.docs()) {
    for (const auto& [term, count] : count_terms(doc, vocab).entries) ++table.df[term];
  }
  return table;
}

FeatureVector build_bow(const AuthorDoc& doc, const Vocabulary& vocab, BowWeighting weighting,
                        const IdfTable* idf) {
  if (weighting == BowWeighting::kTfIdf && (idf == nullptr || idf->df.size() != vocab.size())) {
    throw InvalidArgument("tf-idf weighting needs document frequencies fitted on this vocabulary");
  }
  FeatureVector v;
  v.dim = vocab.size();
  for (const auto& [term, count] : count_terms(doc, vocab).entries) {
    double x = static_cast<double>(count);
    if (weighting == BowWeighting::kBoolean) x = 1.0;
    if (weighting == BowWeighting::kTfIdf) x *= idf->idf(term);
    if (x == 0.0) continue;
    v.indices.push_back(term);
    v.values.push_back(x);
  }
  if (weighting == BowWeighting::kTfIdf) {
    const double norm = std::sqrt(v.squared_norm());
    if (norm > 0.0) {
      for (double& x : v.values) x /= norm;
    }
  }
  return v;
}

SvmModel::SvmModel(std::vector<std::string> categories, std::size_t dims, double C, bool bias,
                   std::vector<std::vector<double>> weights)
    : categories_(std::move(categories)), dims_(dims), C_(C), bias_(bias), weights_(std::move(weights)) {
  if (categories_.size() < 2) throw InvalidArgument("a model needs at least two categories");
  const std::size_t expected = categories_.size() == 2 ? 1 : categories_.size();
  if (weights_.size() != expected) throw InvalidArgument("wrong number of weight vectors for the categories");
  for (const auto& w : weights_) {
    if (w.size() != dims_ + 1) throw InvalidArgument("weight vector length must be dims + 1");
  }
}

namespace {

double sparse_dot(const FeatureVector& x, const std::vector<double>& w, bool bias) {
  double s = bias ? w.back() : 0.0;
  for (std::size_t k = 0; k < x.indices.size(); ++k) s += w[x.indices[k]] * x.values[k];
  return s;
}

}  // namespace

std::vector<double> SvmModel::decision_values(const FeatureVector& x) const {
  if (x.dim != dims_) {
    throw InvalidArgument("feature dimension " + std::to_string(x.dim) + " does not match model dimension " +
                          std::to_string(dims_));
  }
  if (weights_.size() == 1) {
    const double v = sparse_dot(x, weights_[0], bias_);
    return {v, -v};
  }
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto& w : weights_) out.push_back(sparse_dot(x, w, bias_));
  return out;
}

const std::string& SvmModel::predict(const FeatureVector& x) const {
  const auto values = decision_values(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[best]) best = c;
  }
  return categories_[best];
}

namespace {

// Dual coordinate descent for one binary subproblem; y holds +1/-1.
std::vector<double> solve_binary(std::span<const FeatureVector> X, const std::vector<double>& y,
                                 std::size_t dims, const SvmConfig& config, std::uint64_t seed,
                                 SvmTrainingInfo& info) {
  const std::size_t n = X.size();
  const double diag = 0.5 / config.C;
  const double bias_feature = config.bias ? 1.0 : 0.0;
  std::vector<double> w(dims + 1, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) qd[i] = X[i].squared_norm() + bias_feature + diag;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);

  for (info.epochs = 0; info.epochs < config.max_epochs;) {
    rng.shuffle(order);
    double violation = 0.0;
    for (std::size_t i : order) {
      const FeatureVector& x = X[i];
      const double g = y[i] * sparse_dot(x, w, config.bias) - 1.0 + diag * alpha[i];
      const double pg = alpha[i] == 0.0 ? std::min(g, 0.0) : g;
      violation = std::max(violation, std::abs(pg));
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::max(alpha[i] - g / qd[i], 0.0);
      const double step = (alpha[i] - old) * y[i];
      for (std::size_t k = 0; k < x.indices.size(); ++k) w[x.indices[k]] += step * x.values[k];
      w[dims] += step * bias_feature;
    }
    ++info.epochs;
    info.final_violation = violation;
    if (config.track_objective) {
      double ww = 0.0;
      for (double v : w) ww += v * v;
      double aa = 0.0, sum = 0.0;
      for (double a : alpha) {
        aa += a * a;
        sum += a;
      }
      info.dual_objective.push_back(0.5 * ww + 0.5 * diag * aa - sum);
    }
    if (violation < config.eps) break;
  }
  return w;
}

}  // namespace

SvmModel train_linear_svm(std::span<const FeatureVector> X, std::span<const std::string> y,
                          const SvmConfig& config) {
  if (X.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  if (X.size() < 2) throw InvalidArgument("need at least two training samples");
  if (!(config.C > 0.0)) throw InvalidArgument("C must be positive");
  if (!(config.eps > 0.0)) throw InvalidArgument("eps must be positive");
  const std::size_t dims = X[0].dim;
  for (const auto& x : X) {
    if (x.dim != dims) throw InvalidArgument("training vectors have different dimensions");
    x.validate();
  }
  std::set<std::string> distinct(y.begin(), y.end());
  if (distinct.size() < 2) throw InvalidArgument("need at least two distinct categories to train");
  std::vector<std::string> categories(distinct.begin(), distinct.end());

  const std::size_t problems = categories.size() == 2 ? 1 : categories.size();
  std::vector<std::vector<double>> weights;
  std::vector<SvmTrainingInfo> info(problems);
  for (std::size_t c = 0; c < problems; ++c) {
    std::vector<double> signs(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) signs[i] = y[i] == categories[c] ? 1.0 : -1.0;
    weights.push_back(solve_binary(X, signs, dims, config, derive_seed(config.seed, c), info[c]));
  }
  SvmModel model(std::move(categories), dims, config.C, config.bias, std::move(weights));
  model.set_training_info(std::move(info));
  return model;
}

std::vector<std::string> predict(const SvmModel& model, std::span<const FeatureVector> X) {
  std::vector<std::string> out;
  out.reserve(X.size());
  for (const auto& x : X) out.push_back(model.predict(x));
  return out;
}

namespace {

constexpr std::string_view kModelMagic = "dtrprof-svm-model 1";

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_svm_model(const SvmModel& model, std::ostream& out) {
  out << kModelMagic << '\n';
  out << "C " << g17(model.C()) << '\n';
  out << "bias " << (model.bias() ? 1 : 0) << '\n';
  out << "dims " << model.dims() << '\n';
  out << "categories " << model.categories().size() << '\n';
  for (const auto& c : model.categories()) {
    if (c.find('\n') != std::string::npos) throw InvalidArgument("category contains a line break");
    out << c << '\n';
  }
  out << "weights " << model.weights().size() << '\n';
  for (const auto& w : model.weights()) {
    for (std::size_t k = 0; k < w.size(); ++k) out << (k ? " " : "") << g17(w[k]);
    out << '\n';
  }
}

SvmModel read_svm_model(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> const std::string& {
    if (!std::getline(in, line)) throw ParseError(source, line_no + 1, "unexpected end of input");
    ++line_no;
    return line;
  };
  auto field = [&](std::string_view key) {
    const std::string& l = next();
    if (l.size() <= key.size() + 1 || l.compare(0, key.size(), key) != 0 || l[key.size()] != ' ') {
      throw ParseError(source, line_no, "expected '" + std::string(key) + " <value>'");
    }
    return l.substr(key.size() + 1);
  };
  auto to_size = [&](const std::string& s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(source, line_no, "invalid count");
    return v;
  };
  auto to_double = [&](const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError(source, line_no, "invalid number '" + s + "'");
    return v;
  };

  if (next() != kModelMagic) throw ParseError(source, line_no, "not an SVM model file");
  const double C = to_double(field("C"));
  const std::string bias = field("bias");
  if (bias != "0" && bias != "1") throw ParseError(source, line_no, "bias must be 0 or 1");
  const std::size_t dims = to_size(field("dims"));
  const std::size_t q = to_size(field("categories"));
  std::vector<std::string> categories;
  for (std::size_t c = 0; c < q; ++c) categories.push_back(next());
  const std::size_t nw = to_size(field("weights"));
  std::vector<std::vector<double>> weights;
  for (std::size_t k = 0; k < nw; ++k) {
    std::istringstream values(next());
    std::vector<double> w;
    std::string tok;
    while (values >> tok) w.push_back(to_double(tok));
    weights.push_back(std::move(w));
  }
  try {
    return SvmModel(std::move(categories), dims, C, bias == "1", std::move(weights));
  } catch (const InvalidArgument& e) {
    throw ParseError(source, line_no, e.what());
  }
}

void Standardizer::fit(std::span<const FeatureVector> X) {
  if (X.empty()) throw InvalidArgument("cannot fit a standardizer on no data");
  const std::size_t d = X[0].dim;
  std::vector<double> sum(d, 0.0), sq(d, 0.0);
  for (const auto& x : X) {
    if (x.dim != d) throw InvalidArgument("vectors have different dimensions");
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      sum[x.indices[k]] += x.values[k];
      sq[x.indices[k]] += x.values[k] * x.values[k];
    }
  }
  const double n = static_cast<double>(X.size());
  mean_.assign(d, 0.0);
  scale_.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    mean_[j] = sum[j] / n;
    const double var = std::max(0.0, sq[j] / n - mean_[j] * mean_[j]);
    if (var > 0.0) scale_[j] = 1.0 / std::sqrt(var);
  }
}

FeatureVector Standardizer::transform(const FeatureVector& x) const {
  if (x.dim != mean_.size()) throw InvalidArgument("standardizer dimension mismatch");
  auto dense = x.to_dense();
  for (std::size_t j = 0; j < dense.size(); ++j) dense[j] = (dense[j] - mean_[j]) * scale_[j];
  return FeatureVector::from_dense(dense);
}

}  // namespace dtrprof
