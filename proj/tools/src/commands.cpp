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

#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "config.hpp"
#include "dtrprof/characteristics.hpp"
#include "dtrprof/diagnostics.hpp"
#include "dtrprof/embeddings.hpp"
#include "dtrprof/error.hpp"
#include "dtrprof/evaluation.hpp"
#include "dtrprof/interpret.hpp"
#include "dtrprof/synthetic.hpp"

namespace dtrprof::cli {
namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::vector<std::string> tasks_for(const Corpus& corpus, const std::vector<std::string>& requested,
                                   const std::string& corpus_name) {
  if (requested.empty()) return corpus.tasks();
  for (const auto& t : requested) {
    if (!corpus.has_task(t)) throw ConfigError("corpus '" + corpus_name + "' has no task '" + t + "'");
  }
  return requested;
}

CorpusSpec spec_from_flag(const std::string& path, const std::string& format) {
  if (format == "synthetic") throw ConfigError("synthetic corpora are configured in a config file");
  if (!fs::exists(path)) throw ConfigError("corpus path '" + path + "' does not exist");
  return corpus_from_path(path, format);
}

// --- run ------------------------------------------------------------------

struct RunFlags {
  std::string config;
  std::vector<std::string> corpora;
  std::string format;
  std::vector<std::string> tasks;
  std::vector<std::string> reps;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t folds = 0;
  std::size_t threads = 0;
};

struct TaskResults {
  // corpus name -> reports in representation order
  std::map<std::string, std::vector<EvalReport>> by_corpus;
  std::vector<std::string> corpus_order;
  std::map<std::string, CollectionStats> stats;
};

void print_table(std::ostream& out, const std::string& task, const TaskResults& results,
                 const ExperimentConfig& cfg) {
  const auto& first = results.by_corpus.at(results.corpus_order.front());
  std::vector<std::size_t> order;
  std::set<std::string> baseline_ids(cfg.baselines.begin(), cfg.baselines.end());
  for (std::size_t r = 0; r < first.size(); ++r) {
    if (!baseline_ids.count(first[r].representation)) order.push_back(r);
  }
  for (std::size_t r = 0; r < first.size(); ++r) {
    if (baseline_ids.count(first[r].representation)) order.push_back(r);
  }

  out << "\nAccuracy for task '" << task << "' (" << cfg.folds << "-fold CV";
  if (!cfg.baselines.empty()) out << "; * = p <= " << cfg.alpha << " vs " << cfg.baselines.front();
  out << ")\n";
  constexpr std::size_t kFirst = 16;
  constexpr std::size_t kCol = 12;
  std::string header = pad("App.", kFirst);
  for (const auto& c : results.corpus_order) header += pad(c, kCol);
  out << header << "Average\n";
  for (std::size_t r : order) {
    std::string line = pad(first[r].representation, kFirst);
    double sum = 0.0;
    for (const auto& c : results.corpus_order) {
      const auto& report = results.by_corpus.at(c)[r];
      std::string cell = fixed(report.mean_accuracy);
      for (const auto& s : report.significance) {
        if (!cfg.baselines.empty() && s.baseline == cfg.baselines.front() && s.test.significant) cell += "*";
      }
      line += pad(cell, kCol);
      sum += report.mean_accuracy;
    }
    out << line << fixed(sum / static_cast<double>(results.corpus_order.size())) << "\n";
  }
}

int cmd_run(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  if (!flags.config.empty()) cfg = load_experiment_config(flags.config);
  if (!flags.corpora.empty()) {
    cfg.corpora.clear();
    for (const auto& c : flags.corpora) cfg.corpora.push_back(spec_from_flag(c, flags.format));
  } else if (!flags.format.empty()) {
    throw ConfigError("--format needs --corpus");
  }
  if (!flags.tasks.empty()) cfg.tasks = flags.tasks;
  if (!flags.reps.empty()) {
    cfg.representations.clear();
    for (const auto& r : flags.reps) cfg.representations.push_back(parse_representation(r, {}));
    std::erase_if(cfg.baselines, [&](const std::string& b) {
      return std::none_of(cfg.representations.begin(), cfg.representations.end(),
                          [&](const RepresentationConfig& r) { return r.id() == b; });
    });
  }
  if (flags.seed) cfg.seed = flags.seed;
  if (!flags.out.empty()) cfg.output_dir = flags.out;
  if (flags.folds) cfg.folds = flags.folds;
  if (flags.threads) cfg.threads = flags.threads;
  validate(cfg);

  std::map<std::string, TaskResults> per_task;
  std::vector<std::string> task_order;
  std::size_t files = 0;
  for (const auto& spec : cfg.corpora) {
    const Corpus corpus = load_corpus_spec(spec, *cfg.seed);
    for (const auto& task : tasks_for(corpus, cfg.tasks, spec.name)) {
      if (!per_task.count(task)) task_order.push_back(task);
      auto& results = per_task[task];
      results.corpus_order.push_back(spec.name);
      results.stats[spec.name] = collection_stats(corpus, task, StopwordList::resolve());
      auto& reports = results.by_corpus[spec.name];

      CrossValidationOptions opts;
      opts.folds = cfg.folds;
      opts.seed = *cfg.seed;
      opts.threads = cfg.threads;
      opts.corpus_name = spec.name;
      for (const auto& rep : cfg.representations) {
        err << "[" << spec.name << "/" << task << "] " << rep.id() << " ..." << std::flush;
        reports.push_back(cross_validate(corpus, task, rep, cfg.classifier, opts));
        err << " " << fixed(reports.back().mean_accuracy) << "\n";
      }
      for (const auto& b : cfg.baselines) {
        const auto base = std::find_if(reports.begin(), reports.end(),
                                       [&](const EvalReport& r) { return r.representation == b; });
        const EvalReport baseline = *base;
        for (auto& r : reports) {
          if (r.representation != b) add_significance(r, baseline, cfg.alpha);
        }
      }
      const std::string stem = spec.name + "." + task;
      for (const auto& r : reports) {
        write_file(cfg.output_dir / (stem + "." + r.representation + ".json"), to_json(r).dump(2) + "\n");
        ++files;
      }
      write_file(cfg.output_dir / (stem + ".folds.csv"), fold_accuracy_csv(reports));
    }
  }

  for (const auto& task : task_order) {
    const auto& results = per_task.at(task);
    if (results.corpus_order.size() > 1) {
      print_table(out, task, results, cfg);
      if (!cfg.baselines.empty()) {
        std::vector<GenreEvaluation> genres;
        for (const auto& name : results.corpus_order) {
          GenreEvaluation g;
          g.genre = name;
          g.stats = results.stats.at(name);
          for (const auto& r : results.by_corpus.at(name)) {
            if (r.representation == cfg.baselines.front()) {
              g.baseline = r;
            } else {
              g.representations.push_back(r);
            }
          }
          genres.push_back(std::move(g));
        }
        write_file(cfg.output_dir / (task + ".correlation.csv"), to_csv(correlation_map(genres)));
      }
    } else {
      const auto& name = results.corpus_order.front();
      out << "\n" << name << " / " << task << " (" << cfg.folds << "-fold CV)\n";
      for (const auto& r : results.by_corpus.at(name)) {
        out << "  " << pad(r.representation, 16) << fixed(r.mean_accuracy);
        for (const auto& s : r.significance) {
          out << "  vs " << s.baseline << ": W=" << s.test.statistic << " p=";
          out << (s.test.method == WilcoxonMethod::kInsufficientN ? std::string("NA (insufficient-n)")
                                                                   : fixed(s.test.p_value, 4));
          out << (s.test.significant ? " *" : "");
        }
        out << "\n";
      }
    }
  }
  out << "\nwrote " << files << " report(s) to " << cfg.output_dir.string() << "\n";
  return kExitOk;
}

// --- characterize ---------------------------------------------------------

struct CharacterizeFlags {
  std::vector<std::string> corpora;
  std::string format;
  std::string task;
  std::string out;
  std::string stopwords;
};

int cmd_characterize(const CharacterizeFlags& flags, std::ostream& out, std::ostream&) {
  const auto stopwords =
      StopwordList::resolve(flags.stopwords.empty() ? std::nullopt : std::optional<fs::path>(flags.stopwords));
  std::string csv = "corpus,task";
  for (auto name : CollectionStats::kNames) csv += "," + std::string(name);
  csv += "\n";
  std::vector<CorpusSpec> specs;
  for (const auto& c : flags.corpora) specs.push_back(spec_from_flag(c, flags.format));
  for (const auto& spec : specs) {
    const Corpus corpus = load_corpus_spec(spec, 0);
    const std::vector<std::string> requested =
        flags.task.empty() ? std::vector<std::string>{} : std::vector<std::string>{flags.task};
    for (const auto& task : tasks_for(corpus, requested, spec.name)) {
      const auto stats = collection_stats(corpus, task, stopwords);
      out << spec.name << " / " << task << " (" << corpus.size() << " documents)\n";
      csv += spec.name + "," + task;
      const auto values = stats.values();
      for (std::size_t k = 0; k < values.size(); ++k) {
        out << "  " << pad(std::string(CollectionStats::kNames[k]), 4) << fixed(values[k], 4) << "\n";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", values[k]);
        csv += ",";
        csv += buf;
      }
      csv += "\n";
    }
  }
  if (!flags.out.empty()) write_file(flags.out, csv);
  return kExitOk;
}

// --- top-terms ------------------------------------------------------------

struct TopTermsFlags {
  std::string corpus;
  std::string format;
  std::string task;
  std::size_t count = 3;
  std::size_t terms = 10;
  std::size_t max_terms = 10000;
  std::string out;
  std::string stopwords;
};

int cmd_top_terms(const TopTermsFlags& flags, std::ostream& out, std::ostream&) {
  const auto spec = spec_from_flag(flags.corpus, flags.format);
  const Corpus corpus = load_corpus_spec(spec, 0);
  if (!corpus.has_task(flags.task)) throw ConfigError("corpus has no task '" + flags.task + "'");
  const auto stopwords =
      StopwordList::resolve(flags.stopwords.empty() ? std::nullopt : std::optional<fs::path>(flags.stopwords));
  const auto columns =
      representative_authors(corpus, flags.task, flags.count, flags.terms, stopwords, flags.max_terms);
  std::ostringstream report;
  for (const auto& column : columns) {
    for (std::size_t i = 0; i < column.authors.size(); ++i) {
      const auto& a = column.authors[i];
      report << column.category << " " << (i + 1) << " (" << a.feature.author_id
             << ", IG " << fixed(a.feature.gain, 4) << "):";
      for (const auto& t : a.top_terms) report << " " << t.term;
      report << "\n";
    }
  }
  if (flags.out.empty()) {
    out << report.str();
  } else {
    write_file(flags.out, report.str());
  }
  return kExitOk;
}

// --- embeddings -----------------------------------------------------------

struct EmbedTrainFlags {
  std::string corpus;
  std::string format;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t max_terms = 10000;
  EmbeddingConfig cfg;
};

int cmd_embed_train(EmbedTrainFlags flags, std::ostream& out, std::ostream&) {
  if (!flags.seed) throw ConfigError("a seed is mandatory (--seed)");
  flags.cfg.seed = *flags.seed;
  try {
    flags.cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  const Corpus corpus = load_corpus_spec(spec_from_flag(flags.corpus, flags.format), 0);
  const auto vocab = build_vocabulary(corpus, flags.max_terms);
  const auto result = train_skipgram(corpus, vocab, flags.cfg);
  for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
    out << "epoch " << (e + 1) << " loss " << fixed(result.epoch_loss[e], 6) << "\n";
  }
  write_word2vec(result.vectors, flags.out);
  out << "wrote " << result.vectors.rows() << " vectors of dim " << result.vectors.dims() << " to " << flags.out
      << "\n";
  return kExitOk;
}

struct NeighborFlags {
  std::string vectors;
  std::string term;
  std::size_t k = 10;
};

int cmd_embed_neighbors(const NeighborFlags& flags, std::ostream& out, std::ostream&) {
  if (!fs::exists(flags.vectors)) throw ConfigError("vector file '" + flags.vectors + "' does not exist");
  const auto table = read_word2vec(flags.vectors);
  const auto& terms = table.terms();
  if (std::find(terms.begin(), terms.end(), flags.term) == terms.end()) {
    throw ConfigError("term '" + flags.term + "' is not in the vector file");
  }
  for (const auto& n : nearest_neighbors(table, flags.term, flags.k)) {
    out << n.term << "\t" << fixed(n.similarity, 6) << "\n";
  }
  return kExitOk;
}

// --- synth ----------------------------------------------------------------

int cmd_synth(SyntheticCorpusConfig cfg, std::optional<std::uint64_t> seed, const std::string& path,
              std::ostream& out) {
  if (!seed) throw ConfigError("a seed is mandatory (--seed)");
  cfg.seed = *seed;
  const Corpus corpus = generate_synthetic_corpus(cfg);
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  save_corpus_jsonl(corpus, path);
  out << "wrote " << corpus.size() << " authors to " << path << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Author profiling with distributional term representations", "dtrprof"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dtrprof 0.1.0");

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Cross-validate representations from a config file");
  run_cmd->add_option("--config", run.config, "JSON experiment config");
  run_cmd->add_option("--corpus", run.corpora, "Corpus path (repeatable; replaces configured corpora)");
  run_cmd->add_option("--format", run.format, "pan-dir or jsonl (inferred when omitted)");
  run_cmd->add_option("--task", run.tasks, "Task to evaluate (repeatable)");
  run_cmd->add_option("--rep", run.reps, "Representation kinds, comma separated")->delimiter(',');
  run_cmd->add_option("--seed", run.seed, "Experiment seed");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--folds", run.folds, "Number of folds")->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", run.threads, "Folds evaluated concurrently")->check(CLI::PositiveNumber);

  CharacterizeFlags ch;
  auto* ch_cmd = app.add_subcommand("characterize", "Collection statistics per corpus and task");
  ch_cmd->add_option("--corpus", ch.corpora, "Corpus path (repeatable)")->required();
  ch_cmd->add_option("--format", ch.format, "pan-dir or jsonl (inferred when omitted)");
  ch_cmd->add_option("--task", ch.task, "Task; all tasks when omitted");
  ch_cmd->add_option("--out", ch.out, "CSV output path");
  ch_cmd->add_option("--stopwords", ch.stopwords, "Stopword list (one word per line)");

  TopTermsFlags tt;
  auto* tt_cmd = app.add_subcommand("top-terms", "Most discriminative authors and their top TF-IDF words");
  tt_cmd->add_option("--corpus", tt.corpus, "Corpus path")->required();
  tt_cmd->add_option("--format", tt.format, "pan-dir or jsonl (inferred when omitted)");
  tt_cmd->add_option("--task", tt.task, "Task")->required();
  tt_cmd->add_option("--count", tt.count, "Authors per category");
  tt_cmd->add_option("--terms", tt.terms, "Words per author");
  tt_cmd->add_option("--max-terms", tt.max_terms, "Vocabulary size for the DOR features");
  tt_cmd->add_option("--out", tt.out, "Write the report here instead of stdout");
  tt_cmd->add_option("--stopwords", tt.stopwords, "Stopword list (one word per line)");

  EmbedTrainFlags et;
  auto* et_cmd = app.add_subcommand("embed-train", "Train skip-gram vectors on a corpus");
  et_cmd->add_option("--corpus", et.corpus, "Corpus path")->required();
  et_cmd->add_option("--format", et.format, "pan-dir or jsonl (inferred when omitted)");
  et_cmd->add_option("--out", et.out, "word2vec text output")->required();
  et_cmd->add_option("--seed", et.seed, "Training seed");
  et_cmd->add_option("--max-terms", et.max_terms, "Vocabulary size");
  et_cmd->add_option("--dim", et.cfg.dim, "Vector dimension");
  et_cmd->add_option("--window", et.cfg.window, "Context window");
  et_cmd->add_option("--negatives", et.cfg.negatives, "Negative samples per pair");
  et_cmd->add_option("--epochs", et.cfg.epochs, "Epochs");
  et_cmd->add_option("--lr", et.cfg.initial_lr, "Initial learning rate");
  et_cmd->add_option("--min-count", et.cfg.min_count, "Minimum term count");
  et_cmd->add_option("--subsample", et.cfg.subsample, "Frequent-word subsampling threshold");

  NeighborFlags nb;
  auto* nb_cmd = app.add_subcommand("embed-neighbors", "Nearest neighbours of a term by cosine");
  nb_cmd->add_option("--vectors", nb.vectors, "word2vec text file")->required();
  nb_cmd->add_option("--term", nb.term, "Query term")->required();
  nb_cmd->add_option("--k", nb.k, "Number of neighbours")->check(CLI::PositiveNumber);

  SyntheticCorpusConfig synth;
  std::optional<std::uint64_t> synth_seed;
  std::string synth_out;
  auto* sy_cmd = app.add_subcommand("synth", "Write a synthetic labelled corpus as JSONL");
  sy_cmd->add_option("--out", synth_out, "JSONL output path")->required();
  sy_cmd->add_option("--seed", synth_seed, "Generator seed");
  sy_cmd->add_option("--categories", synth.categories)->check(CLI::PositiveNumber);
  sy_cmd->add_option("--authors-per-category", synth.authors_per_category)->check(CLI::PositiveNumber);
  sy_cmd->add_option("--topical-terms", synth.topical_terms)->check(CLI::PositiveNumber);
  sy_cmd->add_option("--shared-terms", synth.shared_terms)->check(CLI::PositiveNumber);
  sy_cmd->add_option("--doc-length", synth.doc_length)->check(CLI::PositiveNumber);
  sy_cmd->add_option("--topical-rate", synth.topical_rate)->check(CLI::Range(0.0, 1.0));
  sy_cmd->add_option("--task", synth.task);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  ScopedWarningSink sink([&](const std::string& msg) { err << "warning: " << msg << "\n"; });
  try {
    if (*run_cmd) return cmd_run(run, out, err);
    if (*ch_cmd) return cmd_characterize(ch, out, err);
    if (*tt_cmd) return cmd_top_terms(tt, out, err);
    if (*et_cmd) return cmd_embed_train(et, out, err);
    if (*nb_cmd) return cmd_embed_neighbors(nb, out, err);
    if (*sy_cmd) return cmd_synth(synth, synth_seed, synth_out, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dtrprof::cli
