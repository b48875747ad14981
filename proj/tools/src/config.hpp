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

#ifndef DTRPROF_TOOLS_CONFIG_HPP_
#define DTRPROF_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtrprof/corpus.hpp"
#include "dtrprof/evaluation.hpp"
#include "dtrprof/synthetic.hpp"

namespace dtrprof::cli {

// Invalid configuration or command line; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusSpec {
  std::string name;
  std::string format;  // pan-dir, jsonl or synthetic
  std::filesystem::path path;
  SyntheticCorpusConfig synthetic;
  bool synthetic_seed_set = false;
};

struct ExperimentConfig {
  std::vector<CorpusSpec> corpora;
  // Empty means every task of each corpus.
  std::vector<std::string> tasks;
  std::vector<RepresentationConfig> representations;
  ClassifierConfig classifier;
  std::size_t folds = 10;
  std::optional<std::uint64_t> seed;
  // Representation ids each other representation is tested against.
  std::vector<std::string> baselines;
  double alpha = 0.05;
  std::size_t threads = 1;
  std::filesystem::path output_dir = "dtrprof-out";
};

// Relative corpus and embedding paths resolve against base_dir.
ExperimentConfig parse_experiment_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

RepresentationConfig parse_representation(const nlohmann::json& j, const std::filesystem::path& base_dir);

// Infers pan-dir for directories and jsonl for files when format is empty.
CorpusSpec corpus_from_path(const std::filesystem::path& path, const std::string& format);

// Checks cross-field constraints, including the mandatory seed.
void validate(const ExperimentConfig& config);

// Synthetic corpora take the experiment seed unless they set their own.
Corpus load_corpus_spec(const CorpusSpec& spec, std::uint64_t experiment_seed);

}  // namespace dtrprof::cli

#endif  // DTRPROF_TOOLS_CONFIG_HPP_
