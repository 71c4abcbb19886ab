// Copyright 2026 The Droidbench Authors
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

#include "droidbench/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "droidbench/classifiers.hpp"
#include "droidbench/corpus.hpp"
#include "droidbench/dataset.hpp"
#include "droidbench/error.hpp"
#include "droidbench/evaluation.hpp"
#include "droidbench/log_ingest.hpp"
#include "droidbench/mock_device.hpp"
#include "droidbench/ranking.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

namespace fs = std::filesystem;

namespace {

constexpr const char* kConfigEnv = "DROIDBENCH_CONFIG";

struct GenArgs {
  std::string out;
  std::string preset = "small";
  std::uint64_t seed = 1;
  std::optional<std::size_t> malware, benign, features, intent_features,
      informative, gap_informative;
  std::optional<double> flip_noise, noise_min, noise_max, no_activity_rate;
  std::optional<double> fail_a_malware, fail_a_benign, fail_b_malware,
      fail_b_benign;
  std::optional<std::string> env_a, env_b;
  std::vector<std::size_t> gap;
};

struct SessionArgs {
  std::string corpus;
  std::string env;
  std::string out;
  SessionConfig config;
  std::optional<std::string> contacts;
};

struct IngestArgs {
  std::string logs, signatures, labels, out;
  std::string tag = "dataset";
};

struct RankArgs {
  std::string arff;
  std::optional<std::size_t> top;
  std::string out;
};

struct TrainArgs {
  std::optional<std::size_t> trees, svm_epochs, logistic_epochs, mlp_epochs,
      mlp_hidden;
  std::optional<double> svm_c, mlp_rate;
};

struct EvalArgs {
  std::string arff;
  std::string arff_a, arff_b;
  std::vector<std::string> algos;
  std::string protocol = "split";
  std::string mode = "all";
  std::uint64_t seed = 1;
  std::vector<std::size_t> ks;
  double train_fraction = 0.66;
  std::size_t folds = 10;
  std::string out;
  std::string accuracy_out;
  bool accuracy_table = false;
  bool shared_vocab = false;
  TrainArgs train;
};

void add_train_options(CLI::App* cmd, TrainArgs& t) {
  cmd->add_option("--trees", t.trees, "Trees per random forest (100)");
  cmd->add_option("--svm-c", t.svm_c, "SVM regularization constant C (1.0)");
  cmd->add_option("--svm-epochs", t.svm_epochs, "SVM passes over the data (30)");
  cmd->add_option("--logistic-epochs", t.logistic_epochs,
                  "Logistic regression epochs (500)");
  cmd->add_option("--mlp-epochs", t.mlp_epochs, "MLP epochs (200)");
  cmd->add_option("--mlp-hidden", t.mlp_hidden,
                  "MLP hidden units (0 = ceil((d+2)/2))");
  cmd->add_option("--mlp-rate", t.mlp_rate, "MLP learning rate (0.3)");
}

TrainConfig train_config(const TrainArgs& t, std::uint64_t seed) {
  TrainConfig cfg;
  cfg.seed = seed;
  if (t.trees) cfg.forest_trees = *t.trees;
  if (t.svm_c) cfg.svm_c = *t.svm_c;
  if (t.svm_epochs) cfg.svm_epochs = *t.svm_epochs;
  if (t.logistic_epochs) cfg.logistic_epochs = *t.logistic_epochs;
  if (t.mlp_epochs) cfg.mlp_epochs = *t.mlp_epochs;
  if (t.mlp_hidden) cfg.mlp_hidden = *t.mlp_hidden;
  if (t.mlp_rate) cfg.mlp_rate = *t.mlp_rate;
  return cfg;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const std::string& name : names) {
    const Algorithm a = parse_algorithm(name);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

// Explicit --ks are used as given (and rejected when too large). Without
// them the standard grid is cut down to what the dataset can support.
std::vector<std::size_t> effective_ks(const std::vector<std::size_t>& given,
                                      std::size_t d) {
  if (!given.empty()) return given;
  std::vector<std::size_t> ks;
  for (std::size_t k : kDefaultKs) {
    if (k <= d) ks.push_back(k);
  }
  if (ks.empty()) ks.push_back(d);
  return ks;
}

Dataset load_arff(const std::string& path) {
  return import_arff(read_file(path));
}

void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  CorpusSpec spec;
  if (a.preset == "full") {
    spec = full_scale_spec(a.seed);
  } else if (a.preset != "small") {
    throw UsageError("unknown preset '" + a.preset + "' (small or full)");
  }
  spec.seed = a.seed;
  if (a.malware) spec.n_malware = *a.malware;
  if (a.benign) spec.n_benign = *a.benign;
  if (a.features) spec.n_features = *a.features;
  if (a.intent_features) spec.n_intent_features = *a.intent_features;
  if (a.informative) spec.n_informative = *a.informative;
  if (a.gap_informative) spec.env_gap_informative = *a.gap_informative;
  if (a.flip_noise) spec.flip_noise = *a.flip_noise;
  if (a.noise_min) spec.noise_rate_min = *a.noise_min;
  if (a.noise_max) spec.noise_rate_max = *a.noise_max;
  if (a.no_activity_rate) spec.no_activity_rate = *a.no_activity_rate;
  if (a.fail_a_malware) spec.failures_a.malware = *a.fail_a_malware;
  if (a.fail_a_benign) spec.failures_a.benign = *a.fail_a_benign;
  if (a.fail_b_malware) spec.failures_b.malware = *a.fail_b_malware;
  if (a.fail_b_benign) spec.failures_b.benign = *a.fail_b_benign;
  if (a.env_a) spec.env_a = *a.env_a;
  if (a.env_b) spec.env_b = *a.env_b;
  if (!a.gap.empty()) spec.env_gap = {a.gap.begin(), a.gap.end()};
  const Manifest m = generate(spec, a.out);
  out << "corpus written to " << a.out << ": "
      << m.spec.n_malware + m.spec.n_benign << " apps, " << m.spec.n_features
      << " features, environments " << m.spec.env_a << " and " << m.spec.env_b
      << '\n';
  return 0;
}

int cmd_session(SessionArgs a, std::ostream& out) {
  const fs::path corpus(a.corpus);
  if (a.contacts) {
    a.config.contact_file = *a.contacts;
  } else if (fs::exists(corpus / "contacts.csv")) {
    a.config.contact_file = (corpus / "contacts.csv").string();
  }
  const fs::path out_dir =
      a.out.empty() ? corpus / a.env / "session" : fs::path(a.out);
  const BatchResult result = run_corpus_session(corpus, a.env, a.config, out_dir);
  out << format_success_stats(result.stats);
  return 0;
}

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const SignatureList signatures = load_signatures(a.signatures);
  const LabelMap labels = load_labels(a.labels);
  std::error_code ec;
  if (!fs::is_directory(a.logs, ec)) {
    throw IoFailure("log directory " + a.logs + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.logs)) {
    if (entry.is_regular_file() && entry.path().extension() == ".log") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<AppObservation> observations;
  std::size_t malformed = 0;
  for (const fs::path& file : files) {
    observations.push_back(extract_observations(
        read_file(file), signatures, file.stem().string()));
    malformed += observations.back().malformed_lines;
  }
  BuildReport report;
  const Dataset dataset = build_dataset(
      observations, labels, Vocabulary(signatures.all()), a.tag, &report);
  write_file_atomic(a.out, export_arff(dataset));
  out << "dataset " << a.tag << ": " << dataset.size() << " apps ("
      << dataset.count(Label::kMalware) << " malware, "
      << dataset.count(Label::kBenign) << " benign), "
      << dataset.feature_count() << " features, " << malformed
      << " malformed log lines skipped -> " << a.out << '\n';
  return 0;
}

int cmd_rank(const RankArgs& a, std::ostream& out) {
  const Dataset dataset = load_arff(a.arff);
  const RankedFeatures ranked = rank_features(dataset);
  if (a.top) top_k(ranked, *a.top);
  emit(a.out, format_ranking_tsv(ranked, a.top), out);
  return 0;
}

SweepOptions sweep_options(const EvalArgs& a, std::size_t d) {
  SweepOptions opt;
  opt.algorithms = parse_algorithms(a.algos);
  opt.ks = effective_ks(a.ks, d);
  opt.protocol.kind = parse_protocol(a.protocol);
  opt.protocol.seed = a.seed;
  opt.protocol.train_fraction = a.train_fraction;
  opt.protocol.folds = a.folds;
  opt.train = train_config(a.train, a.seed);
  opt.accuracy_table = a.accuracy_table || !a.accuracy_out.empty();
  opt.shared_ranking = a.shared_vocab;
  return opt;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Dataset dataset = load_arff(a.arff);
  const SweepOptions opt = sweep_options(a, dataset.feature_count());
  const ComparisonReport report =
      sweep_topk(dataset, rank_features(dataset), opt);
  if (!a.out.empty()) write_file_atomic(a.out, format_report_tsv(report));
  if (!a.accuracy_out.empty()) {
    write_file_atomic(a.accuracy_out, format_accuracy_tsv(report));
  }
  out << format_report_table(report);
  if (opt.accuracy_table) out << '\n' << format_accuracy_tsv(report);
  return 0;
}

int cmd_compare(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  Dataset ds_a = load_arff(a.arff_a);
  Dataset ds_b = load_arff(a.arff_b);
  if (ds_a.tag() == ds_b.tag()) {
    err << "note: both inputs are tagged '" << ds_a.tag() << "'; reporting them as '"
        << ds_a.tag() << ".a' and '" << ds_b.tag() << ".b'\n";
    ds_a = ds_a.with_tag(ds_a.tag() + ".a");
    ds_b = ds_b.with_tag(ds_b.tag() + ".b");
  }
  const CompareMode mode = parse_compare_mode(a.mode);
  const SweepOptions opt = sweep_options(
      a, std::min(ds_a.feature_count(), ds_b.feature_count()));
  const ComparisonReport report = compare_environments(ds_a, ds_b, opt, mode);
  const fs::path dir(a.out);
  write_file_atomic(dir / "comparison.tsv", format_report_tsv(report));
  write_file_atomic(dir / "comparison.txt", format_report_table(report));
  write_file_atomic(dir / "fmeasure.csv", format_plot_csv(report));
  write_file_atomic(dir / "feature_deltas.tsv", format_deltas_tsv(report));
  if (opt.accuracy_table) {
    write_file_atomic(dir / "accuracy.tsv", format_accuracy_tsv(report));
  }
  out << format_report_table(report);
  const std::vector<std::string> only_b = report.only_in_b();
  const std::vector<std::string> only_a = report.only_in_a();
  out << '\n' << only_b.size() << " features observed only in "
      << report.environments[1] << ", " << only_a.size()
      << " only in " << report.environments[0] << '\n';
  return 0;
}

bool parse_bool(const KeyValue& kv) {
  static const std::set<std::string> kTrue{"true", "yes", "on", "1"};
  static const std::set<std::string> kFalse{"false", "no", "off", "0"};
  if (kTrue.count(kv.value)) return true;
  if (kFalse.count(kv.value)) return false;
  throw ConfigError(kv.line, "'" + kv.key + "' needs true or false");
}

bool flag_given(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  for (const std::string& arg : args) {
    if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Adds `--key value` for every config entry the command line leaves unset.
// Keys must name a long option of some command; entries for options of
// other commands are ignored so one file can serve the whole workflow.
std::vector<std::string> apply_config(CLI::App& app,
                                      std::vector<std::string> args) {
  std::optional<std::string> path;
  std::size_t command_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else if (command_pos == args.size() && !args[i].empty() &&
               args[i][0] != '-') {
      command_pos = i;
    }
  }
  if (!path) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env) {
      path = env;
    }
  }
  if (!path) return args;

  const std::vector<KeyValue> entries = parse_key_values(read_file(*path));
  std::set<std::string> known;
  for (const CLI::App* cmd : app.get_subcommands({})) {
    for (const CLI::Option* opt : cmd->get_options()) {
      for (const std::string& name : opt->get_lnames()) known.insert(name);
    }
  }
  known.erase("help");
  CLI::App* command = nullptr;
  if (command_pos < args.size()) {
    for (CLI::App* cmd : app.get_subcommands({})) {
      if (cmd->get_name() == args[command_pos]) command = cmd;
    }
  }
  for (const KeyValue& kv : entries) {
    if (!known.count(kv.key)) {
      throw ConfigError(kv.line, "unknown key '" + kv.key + "' in " + *path);
    }
    if (command == nullptr || flag_given(args, kv.key)) continue;
    const CLI::Option* opt = nullptr;
    for (const CLI::Option* candidate : command->get_options()) {
      const auto& names = candidate->get_lnames();
      if (std::find(names.begin(), names.end(), kv.key) != names.end()) {
        opt = candidate;
      }
    }
    if (opt == nullptr) continue;
    if (opt->get_type_size() == 0) {
      if (parse_bool(kv)) args.push_back("--" + kv.key);
    } else {
      args.push_back("--" + kv.key);
      args.push_back(kv.value);
    }
  }
  return args;
}

}  // namespace

BatchResult run_corpus_session(const fs::path& corpus_dir,
                               const std::string& env,
                               const SessionConfig& config,
                               const fs::path& out_dir) {
  const Manifest manifest =
      parse_manifest(read_file(corpus_dir / "manifest.txt"));
  const auto crash = manifest.crash.find(env);
  if (crash == manifest.crash.end()) {
    throw UsageError("environment '" + env + "' is not in the corpus (have " +
                     manifest.spec.env_a + ", " + manifest.spec.env_b + ")");
  }
  const LabelMap labels = load_labels((corpus_dir / "labels.csv").string());
  MockScript script;
  script.crash_set = crash->second;
  script.no_activity_set = manifest.no_activity;
  std::vector<AppSample> samples;
  for (const auto& [id, label] : labels) {
    const fs::path log = corpus_dir / env / "logs" / (id + ".log");
    if (fs::exists(log)) script.logs[id] = read_file(log);
    samples.push_back(
        {id, label, (corpus_dir / "apks" / (id + ".apk")).string()});
  }

  VirtualClock clock;
  MockDevice device(std::move(script), &clock);
  SessionOrchestrator orchestrator(device, clock, config);
  const BatchResult result = orchestrator.batch_run(samples);

  std::error_code ec;
  fs::remove_all(out_dir / "logs", ec);
  for (const RunOutcome& o : result.outcomes) {
    if (o.status == RunStatus::kCompleted) {
      write_file_atomic(out_dir / "logs" / (o.app_id + ".log"), o.raw_log);
    }
  }
  write_file_atomic(out_dir / "outcomes.tsv",
                    format_outcomes_tsv(result.outcomes));
  write_file_atomic(out_dir / "success_stats.txt",
                    format_success_stats(result.stats));
  std::string transcript;
  for (const std::string& line : orchestrator.transcript()) {
    transcript += line + '\n';
  }
  write_file_atomic(out_dir / "session.log", transcript);
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dynamic-analysis malware detection workbench"};
  app.name("droidbench");
  app.require_subcommand(1);
  // Lets --config appear after the command name as well.
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 "Defaults file with `key = value` lines (also " +
                     std::string(kConfigEnv) + ")");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic corpus");
  gen->add_option("--out", gen_args.out, "Output directory")->required();
  gen->add_option("--preset", gen_args.preset,
                  "small (100+100 apps) or full (1222+1222, six-feature gap, "
                  "reference failure rates)");
  gen->add_option("--seed", gen_args.seed, "Master seed");
  gen->add_option("--malware", gen_args.malware, "Malware apps");
  gen->add_option("--benign", gen_args.benign, "Benign apps");
  gen->add_option("--features", gen_args.features, "Monitored signatures");
  gen->add_option("--intent-features", gen_args.intent_features,
                  "How many signatures are intents");
  gen->add_option("--informative", gen_args.informative,
                  "Signatures correlated with the class");
  gen->add_option("--flip-noise", gen_args.flip_noise,
                  "Presence probability of an informative signature in benign "
                  "apps (and absence probability in malware)");
  gen->add_option("--noise-min", gen_args.noise_min, "Lowest noise presence rate");
  gen->add_option("--noise-max", gen_args.noise_max, "Highest noise presence rate");
  gen->add_option("--gap", gen_args.gap,
                  "Feature indices never logged in environment A")
      ->delimiter(',');
  gen->add_option("--gap-informative", gen_args.gap_informative,
                  "Informative features never logged in environment A");
  gen->add_option("--env-a", gen_args.env_a, "Name of environment A");
  gen->add_option("--env-b", gen_args.env_b, "Name of environment B");
  gen->add_option("--fail-a-malware", gen_args.fail_a_malware,
                  "Failed-run fraction of malware in environment A");
  gen->add_option("--fail-a-benign", gen_args.fail_a_benign,
                  "Failed-run fraction of benign apps in environment A");
  gen->add_option("--fail-b-malware", gen_args.fail_b_malware,
                  "Failed-run fraction of malware in environment B");
  gen->add_option("--fail-b-benign", gen_args.fail_b_benign,
                  "Failed-run fraction of benign apps in environment B");
  gen->add_option("--no-activity-rate", gen_args.no_activity_rate,
                  "Fraction of apps without a launchable activity");

  SessionArgs session_args;
  CLI::App* session =
      app.add_subcommand("session", "Run a corpus through a scripted device");
  session->add_option("--corpus", session_args.corpus, "Corpus directory")
      ->required();
  session->add_option("--env", session_args.env, "Environment to replay")
      ->required();
  session->add_option("--out", session_args.out,
                      "Output directory (default <corpus>/<env>/session)");
  session->add_option("--run-seconds", session_args.config.run_duration_s,
                      "Analysis time per app");
  session->add_option("--battery-min", session_args.config.battery_min_pct,
                      "Battery level required before each app");
  session->add_option("--battery-poll", session_args.config.battery_poll_s,
                      "Seconds between battery checks");
  session->add_option("--events", session_args.config.event_count,
                      "Random UI events per app");
  session->add_option("--event-seed", session_args.config.event_seed,
                      "Seed for the event generator");
  session->add_option("--attempts", session_args.config.driver_attempts,
                      "Attempts per device command");
  session->add_option("--contacts", session_args.contacts,
                      "name,phone file (default <corpus>/contacts.csv)");
  session->add_option("--assets", session_args.config.asset_dir,
                      "Directory pushed to the SD card");

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "Extract signatures from logs and write an ARFF dataset");
  ingest->add_option("--logs", ingest_args.logs, "Directory of <app>.log files")
      ->required();
  ingest->add_option("--signatures", ingest_args.signatures, "Signature file")
      ->required();
  ingest->add_option("--labels", ingest_args.labels, "app_id,label CSV")
      ->required();
  ingest->add_option("--out", ingest_args.out, "ARFF output file")->required();
  ingest->add_option("--tag", ingest_args.tag,
                     "Dataset name, usually the environment");

  RankArgs rank_args;
  CLI::App* rank = app.add_subcommand("rank", "Rank features by information gain");
  rank->add_option("--arff", rank_args.arff, "Dataset")->required();
  rank->add_option("--top", rank_args.top, "Only the first K features");
  rank->add_option("--out", rank_args.out, "TSV output (default stdout)");

  EvalArgs eval_args;
  eval_args.algos = {"rf"};
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate classifiers on the top-k ranked features");
  eval->add_option("--arff", eval_args.arff, "Dataset")->required();
  eval->add_option("--algo", eval_args.algos,
                   "svm, nb, sl, mlp, rf, j48 (comma separated)")
      ->delimiter(',');
  eval->add_option("--protocol", eval_args.protocol, "split or cv");
  eval->add_option("--seed", eval_args.seed, "Seed for splits and training");
  eval->add_option("--ks", eval_args.ks, "Feature counts (default 20,40,60,80,100)")
      ->delimiter(',');
  eval->add_option("--train-fraction", eval_args.train_fraction,
                   "Training share of the percentage split");
  eval->add_option("--folds", eval_args.folds, "Cross-validation folds");
  eval->add_option("--out", eval_args.out, "TSV report file");
  eval->add_option("--accuracy-out", eval_args.accuracy_out,
                   "Split and cross-validation accuracy TSV");
  eval->add_flag("--accuracy-table", eval_args.accuracy_table,
                 "Also compute split and cross-validation accuracy");
  add_train_options(eval, eval_args.train);

  EvalArgs compare_args;
  compare_args.algos = {"svm", "nb", "sl", "mlp", "rf", "j48"};
  CLI::App* compare =
      app.add_subcommand("compare", "Compare two environments' datasets");
  compare->add_option("--arff-a", compare_args.arff_a, "Environment A dataset")
      ->required();
  compare->add_option("--arff-b", compare_args.arff_b, "Environment B dataset")
      ->required();
  compare->add_option("--mode", compare_args.mode,
                      "all, or overlap to keep only apps present in both");
  compare->add_option("--algos", compare_args.algos, "Algorithms (comma separated)")
      ->delimiter(',');
  compare->add_option("--protocol", compare_args.protocol, "split or cv");
  compare->add_option("--seed", compare_args.seed, "Seed for splits and training");
  compare->add_option("--ks", compare_args.ks, "Feature counts")->delimiter(',');
  compare->add_option("--train-fraction", compare_args.train_fraction,
                      "Training share of the percentage split");
  compare->add_option("--folds", compare_args.folds, "Cross-validation folds");
  compare->add_option("--out-dir", compare_args.out, "Report directory")
      ->required();
  compare->add_flag("--accuracy-table", compare_args.accuracy_table,
                    "Also write split and cross-validation accuracy");
  compare->add_flag("--shared-vocab", compare_args.shared_vocab,
                    "Rank features once on both environments pooled");
  add_train_options(compare, compare_args.train);

  std::vector<std::string> full_args;
  try {
    full_args = apply_config(app, args);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    std::vector<std::string> reversed(full_args.rbegin(), full_args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args, out);
    if (session->parsed()) return cmd_session(session_args, out);
    if (ingest->parsed()) return cmd_ingest(ingest_args, out);
    if (rank->parsed()) return cmd_rank(rank_args, out);
    if (eval->parsed()) return cmd_eval(eval_args, out);
    if (compare->parsed()) return cmd_compare(compare_args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace droidbench
