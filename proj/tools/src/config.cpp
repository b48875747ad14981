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

#include "config.hpp"

#include <fstream>
#include <set>

#include "dtrprof/error.hpp"

namespace dtrprof::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("'" + key + "' in " + where + " has the wrong type");
  }
}

template <typename T>
void read_if(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

std::size_t positive(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    throw ConfigError("'" + key + "' in " + where + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

void read_positive(const json& obj, const std::string& key, const std::string& where, std::size_t& out) {
  if (obj.contains(key)) out = positive(obj, key, where);
}

std::uint64_t seed_value(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError("seed in " + where + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename F>
auto translate(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

CorpusSpec parse_corpus(const json& j, const std::filesystem::path& base_dir, std::size_t index) {
  const std::string where = "corpora[" + std::to_string(index) + "]";
  check_keys(j, {"name", "format", "path", "synthetic"}, where);
  CorpusSpec spec;
  spec.format = j.contains("format") ? get<std::string>(j, "format", where) : "";
  if (spec.format == "synthetic") {
    if (j.contains("path")) throw ConfigError(where + ": synthetic corpora take no path");
    if (j.contains("synthetic")) {
      const auto& s = j.at("synthetic");
      const std::string sw = where + ".synthetic";
      check_keys(s, {"categories", "authors_per_category", "topical_terms", "shared_terms", "doc_length",
                     "topical_rate", "task", "seed"},
                 sw);
      auto& cfg = spec.synthetic;
      read_positive(s, "categories", sw, cfg.categories);
      read_positive(s, "authors_per_category", sw, cfg.authors_per_category);
      read_positive(s, "topical_terms", sw, cfg.topical_terms);
      read_positive(s, "shared_terms", sw, cfg.shared_terms);
      read_positive(s, "doc_length", sw, cfg.doc_length);
      read_if(s, "topical_rate", sw, cfg.topical_rate);
      read_if(s, "task", sw, cfg.task);
      if (s.contains("seed")) {
        cfg.seed = seed_value(s.at("seed"), sw);
        spec.synthetic_seed_set = true;
      }
    }
    spec.name = j.contains("name") ? get<std::string>(j, "name", where) : "synthetic";
    return spec;
  }
  if (j.contains("synthetic")) throw ConfigError(where + ": 'synthetic' needs format synthetic");
  if (!j.contains("path")) throw ConfigError(where + " needs a path");
  auto resolved = corpus_from_path(resolve(base_dir, get<std::string>(j, "path", where)), spec.format);
  if (j.contains("name")) resolved.name = get<std::string>(j, "name", where);
  return resolved;
}

}  // namespace

CorpusSpec corpus_from_path(const std::filesystem::path& path, const std::string& format) {
  CorpusSpec spec;
  spec.path = path;
  spec.name = path.filename().empty() ? path.parent_path().filename().string() : path.stem().string();
  if (format.empty()) {
    spec.format = std::filesystem::is_directory(path) ? "pan-dir" : "jsonl";
  } else if (format == "pan-dir" || format == "jsonl") {
    spec.format = format;
  } else {
    throw ConfigError("unknown corpus format '" + format + "' (expected pan-dir, jsonl or synthetic)");
  }
  return spec;
}

RepresentationConfig parse_representation(const json& j, const std::filesystem::path& base_dir) {
  const std::string where = "representation";
  if (j.is_string()) {
    RepresentationConfig rep;
    rep.kind = translate([&] { return parse_representation_kind(j.get<std::string>()); });
    return rep;
  }
  check_keys(j,
             {"kind", "name", "max_terms", "k_per_class", "aggregation", "tcor_idf", "log_base", "embedding",
              "pretrained_path"},
             where);
  if (!j.contains("kind")) throw ConfigError("representation needs a kind");
  RepresentationConfig rep;
  rep.kind = translate([&] { return parse_representation_kind(get<std::string>(j, "kind", where)); });
  read_if(j, "name", where, rep.name);
  read_positive(j, "max_terms", where, rep.max_terms);
  read_positive(j, "k_per_class", where, rep.k_per_class);
  if (j.contains("aggregation")) {
    rep.aggregation = translate([&] { return parse_aggregation(get<std::string>(j, "aggregation", where)); });
  }
  if (j.contains("tcor_idf")) {
    rep.tcor_idf = translate([&] { return parse_tcor_idf(get<std::string>(j, "tcor_idf", where)); });
  }
  if (j.contains("log_base")) {
    rep.log_base = translate([&] { return parse_log_base(get<std::string>(j, "log_base", where)); });
  }
  if (j.contains("embedding")) {
    const auto& e = j.at("embedding");
    const std::string ew = "representation.embedding";
    check_keys(e, {"dim", "window", "negatives", "epochs", "initial_lr", "min_count", "subsample"}, ew);
    auto& cfg = rep.embedding;
    read_positive(e, "dim", ew, cfg.dim);
    read_positive(e, "window", ew, cfg.window);
    read_positive(e, "negatives", ew, cfg.negatives);
    read_positive(e, "epochs", ew, cfg.epochs);
    read_if(e, "initial_lr", ew, cfg.initial_lr);
    read_positive(e, "min_count", ew, cfg.min_count);
    read_if(e, "subsample", ew, cfg.subsample);
    translate([&] {
      cfg.validate();
      return 0;
    });
  }
  if (j.contains("pretrained_path")) {
    rep.pretrained_path = resolve(base_dir, get<std::string>(j, "pretrained_path", where));
  }
  if (rep.kind == RepresentationKind::kW2vPretrained && rep.pretrained_path.empty()) {
    throw ConfigError("w2v-pretrained needs a pretrained_path");
  }
  return rep;
}

ExperimentConfig parse_experiment_config(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, {"seed", "corpora", "tasks", "representations", "classifier", "evaluation", "output_dir"},
             "config");
  ExperimentConfig cfg;
  if (j.contains("seed")) cfg.seed = seed_value(j.at("seed"), "config");
  if (j.contains("corpora")) {
    const auto& corpora = j.at("corpora");
    if (!corpora.is_array()) throw ConfigError("corpora must be a list");
    for (std::size_t i = 0; i < corpora.size(); ++i) cfg.corpora.push_back(parse_corpus(corpora[i], base_dir, i));
  }
  if (j.contains("tasks")) cfg.tasks = get<std::vector<std::string>>(j, "tasks", "config");
  if (j.contains("representations")) {
    const auto& reps = j.at("representations");
    if (!reps.is_array()) throw ConfigError("representations must be a list");
    for (const auto& r : reps) cfg.representations.push_back(parse_representation(r, base_dir));
  }
  if (j.contains("classifier")) {
    const auto& c = j.at("classifier");
    check_keys(c, {"C", "bow_weighting", "standardize", "eps", "max_epochs"}, "classifier");
    read_if(c, "C", "classifier", cfg.classifier.C);
    if (!(cfg.classifier.C > 0.0)) throw ConfigError("classifier C must be positive");
    if (c.contains("bow_weighting")) {
      cfg.classifier.bow_weighting =
          translate([&] { return parse_bow_weighting(get<std::string>(c, "bow_weighting", "classifier")); });
    }
    read_if(c, "standardize", "classifier", cfg.classifier.standardize);
    read_if(c, "eps", "classifier", cfg.classifier.eps);
    if (!(cfg.classifier.eps > 0.0)) throw ConfigError("classifier eps must be positive");
    read_positive(c, "max_epochs", "classifier", cfg.classifier.max_epochs);
  }
  if (j.contains("evaluation")) {
    const auto& e = j.at("evaluation");
    check_keys(e, {"folds", "baselines", "alpha", "threads"}, "evaluation");
    read_positive(e, "folds", "evaluation", cfg.folds);
    read_if(e, "baselines", "evaluation", cfg.baselines);
    read_if(e, "alpha", "evaluation", cfg.alpha);
    read_positive(e, "threads", "evaluation", cfg.threads);
  }
  if (j.contains("output_dir")) cfg.output_dir = get<std::string>(j, "output_dir", "config");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j, path.parent_path());
}

void validate(const ExperimentConfig& config) {
  if (!config.seed) throw ConfigError("a seed is mandatory (config key 'seed' or --seed)");
  if (config.corpora.empty()) throw ConfigError("no corpus configured");
  if (config.representations.empty()) throw ConfigError("no representation configured");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  std::set<std::string> ids;
  for (const auto& r : config.representations) {
    if (!ids.insert(r.id()).second) throw ConfigError("duplicate representation id '" + r.id() + "'");
  }
  for (const auto& b : config.baselines) {
    if (!ids.count(b)) throw ConfigError("baseline '" + b + "' is not a configured representation");
  }
  std::set<std::string> names;
  for (const auto& c : config.corpora) {
    if (!names.insert(c.name).second) throw ConfigError("duplicate corpus name '" + c.name + "'");
    if (c.format != "synthetic" && !std::filesystem::exists(c.path)) {
      throw ConfigError("corpus path '" + c.path.string() + "' does not exist");
    }
  }
}

Corpus load_corpus_spec(const CorpusSpec& spec, std::uint64_t experiment_seed) {
  if (spec.format == "synthetic") {
    auto cfg = spec.synthetic;
    if (!spec.synthetic_seed_set) cfg.seed = experiment_seed;
    return generate_synthetic_corpus(cfg);
  }
  if (!std::filesystem::exists(spec.path)) {
    throw ConfigError("corpus path '" + spec.path.string() + "' does not exist");
  }
  return load_corpus(spec.path, parse_corpus_format(spec.format));
}

}  // namespace dtrprof::cli
