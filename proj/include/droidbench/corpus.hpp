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

#ifndef DROIDBENCH_CORPUS_HPP
#define DROIDBENCH_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "droidbench/dataset.hpp"
#include "droidbench/label.hpp"
#include "droidbench/log_ingest.hpp"

namespace droidbench {

// Failure rates for one environment: the fraction of each class whose
// analysis run does not complete (crash or no launchable activity).
struct FailureRates {
  double malware = 0.0;
  double benign = 0.0;

  bool operator==(const FailureRates&) const = default;
};

struct CorpusSpec {
  std::size_t n_malware = 100;
  std::size_t n_benign = 100;
  std::size_t n_features = 178;
  // How many of the features are intents; the rest are API calls.
  std::size_t n_intent_features = 24;
  std::size_t n_informative = 12;
  // Informative features show up in malware with probability 1 - flip_noise
  // and in benign apps with probability flip_noise.
  double flip_noise = 0.1;
  // Class-independent presence rate of each noise feature is drawn from
  // [noise_rate_min, noise_rate_max).
  double noise_rate_min = 0.02;
  double noise_rate_max = 0.6;
  // Environment names; logs of the first one never mention env_gap features.
  std::string env_a = "emulator";
  std::string env_b = "phone";
  // Feature indices suppressed in environment A, plus the first
  // env_gap_informative of the randomly chosen informative features.
  std::set<std::size_t> env_gap;
  std::size_t env_gap_informative = 0;
  FailureRates failures_a;
  FailureRates failures_b;
  // Fraction of each class without a launchable activity; these fail in both
  // environments and count towards the failure rates above.
  double no_activity_rate = 0.0;
  std::uint64_t seed = 1;

  // Throws UsageError.
  void validate() const;

  bool operator==(const CorpusSpec&) const = default;
};

// Full-scale experiment shape: 1222 apps per class, 178 features,
// six informative features hidden from the emulator, and the per-class
// success counts of the two reference environments.
CorpusSpec full_scale_spec(std::uint64_t seed);

struct PlannedApp {
  std::string id;
  Label label = Label::kBenign;
  std::vector<std::uint8_t> present;  // per feature, environment B view
};

// Everything the generator decides, before any file is written.
struct Corpus {
  CorpusSpec spec;
  SignatureList signatures;
  std::vector<PlannedApp> apps;            // sorted by id
  std::vector<std::string> informative;    // feature names, ascending index
  std::vector<std::string> env_gap;        // feature names, ascending index
  std::map<std::string, double> noise_rates;
  std::set<std::string> crash_a;
  std::set<std::string> crash_b;
  std::set<std::string> no_activity;
  // Full-run log of every app in each environment.
  std::map<std::string, std::string> logs_a;
  std::map<std::string, std::string> logs_b;

  LabelMap labels() const;
  const std::set<std::string>& crash_set(const std::string& env) const;
  const std::map<std::string, std::string>& logs(const std::string& env) const;
};

Corpus plan_corpus(const CorpusSpec& spec);

// Ground truth written next to the corpus as `key = value` lines.
struct Manifest {
  CorpusSpec spec;
  std::vector<std::string> informative;
  std::vector<std::string> env_gap;
  std::map<std::string, double> noise_rates;
  std::map<std::string, std::set<std::string>> crash;  // by environment
  std::set<std::string> no_activity;

  bool operator==(const Manifest&) const = default;
};

Manifest manifest_of(const Corpus& corpus);
std::string format_manifest(const Manifest& manifest);
// Throws ConfigError with a line number.
Manifest parse_manifest(std::string_view text);

// Writes into out_dir:
//   manifest.txt  signatures.txt  labels.csv  contacts.csv
//   <env_a>/logs/<app>.log  <env_b>/logs/<app>.log
// Throws IoFailure.
Manifest generate(const CorpusSpec& spec, const std::filesystem::path& out_dir);

// Presence matrix of every planned app as seen from one environment, with
// no crashes and no log round trip. Tagged with the environment name.
Dataset planted_dataset(const Corpus& corpus, const std::string& env);

}  // namespace droidbench

#endif  // DROIDBENCH_CORPUS_HPP
