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

#ifndef DROIDBENCH_EVALUATION_HPP
#define DROIDBENCH_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "droidbench/classifiers.hpp"
#include "droidbench/dataset.hpp"
#include "droidbench/ranking.hpp"

namespace droidbench {

// Malware is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;
};

// Throws LengthMismatch when the spans differ in length or are empty.
ConfusionMatrix confusion(std::span<const Label> predictions,
                          std::span<const Label> labels);

// Rates whose denominator is zero are left empty and print as "n/a".
struct MetricsReport {
  ConfusionMatrix cm;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> tnr;
  std::optional<double> fnr;
  std::optional<double> f_malware;  // empty when no malware rows
  std::optional<double> f_benign;   // empty when no benign rows
  double weighted_f = 0.0;          // support-weighted mean of per-class F
  double accuracy = 0.0;

  bool operator==(const MetricsReport&) const = default;
};

// Standard rate definitions: tpr = tp/(tp+fn), fpr = fp/(fp+tn),
// tnr = tn/(tn+fp), fnr = fn/(fn+tp). A class that is present but never
// predicted correctly gets F = 0. Throws LengthMismatch on an empty matrix.
MetricsReport metrics(const ConfusionMatrix& cm);

// "n/a" for an empty optional, otherwise fixed with `decimals` places.
std::string format_rate(const std::optional<double>& value, int decimals = 4);

// Train on a seeded split, score the held-out side.
MetricsReport evaluate_split(const Dataset& dataset, Algorithm algorithm,
                             const TrainConfig& cfg,
                             double train_fraction = 0.66,
                             std::uint64_t seed = 1);

struct CvResult {
  double mean_accuracy = 0.0;        // unweighted mean over folds
  std::vector<double> fold_accuracy;
  MetricsReport pooled;              // one matrix over every fold's predictions

  bool operator==(const CvResult&) const = default;
};

// Throws DatasetTooSmall when the dataset has fewer rows than folds.
CvResult evaluate_cv(const Dataset& dataset, Algorithm algorithm,
                     const TrainConfig& cfg, std::size_t k = 10,
                     std::uint64_t seed = 1);

struct Protocol {
  enum class Kind { kSplit, kCv };
  Kind kind = Kind::kSplit;
  double train_fraction = 0.66;
  std::size_t folds = 10;
  std::uint64_t seed = 1;

  std::string name() const { return kind == Kind::kSplit ? "split" : "cv"; }
};

// Throws UsageError for anything but "split" or "cv".
Protocol::Kind parse_protocol(std::string_view name);

// The metrics the protocol reports: the held-out side for a split, the
// pooled matrix for cross-validation.
MetricsReport evaluate(const Dataset& dataset, Algorithm algorithm,
                       const TrainConfig& cfg, const Protocol& protocol);

inline constexpr std::size_t kDefaultKs[] = {20, 40, 60, 80, 100};

struct GridCell {
  std::string environment;
  Algorithm algorithm = Algorithm::kForest;
  std::size_t k = 0;
  std::string protocol;
  MetricsReport metrics;

  bool operator==(const GridCell&) const = default;
};

// Per-class observation counts for one feature in two environments.
struct FeatureDelta {
  std::string feature;
  std::size_t malware_a = 0;
  std::size_t benign_a = 0;
  std::size_t malware_b = 0;
  std::size_t benign_b = 0;

  std::size_t total_a() const { return malware_a + benign_a; }
  std::size_t total_b() const { return malware_b + benign_b; }
  bool operator==(const FeatureDelta&) const = default;
};

// Percentage-split and cross-validation accuracy side by side.
struct AccuracyRow {
  std::string environment;
  Algorithm algorithm = Algorithm::kForest;
  std::size_t k = 0;
  double split_accuracy = 0.0;
  double cv_accuracy = 0.0;

  bool operator==(const AccuracyRow&) const = default;
};

struct ComparisonReport {
  std::vector<std::string> environments;  // in report order
  std::vector<GridCell> cells;            // environment, algorithm, k order
  std::vector<FeatureDelta> deltas;       // empty for a single environment
  std::vector<AccuracyRow> accuracy;      // only when requested

  const GridCell* find(std::string_view environment, Algorithm algorithm,
                       std::size_t k) const;
  // Features with observations in environment B and none in A, and the
  // reverse.
  std::vector<std::string> only_in_b() const;
  std::vector<std::string> only_in_a() const;
};

struct SweepOptions {
  std::vector<Algorithm> algorithms;
  std::vector<std::size_t> ks{std::begin(kDefaultKs), std::end(kDefaultKs)};
  Protocol protocol;
  TrainConfig train;
  // Adds split and cross-validation accuracy for every cell.
  bool accuracy_table = false;
  // compare_environments only: rank once on the rows of both environments
  // pooled together instead of once per environment.
  bool shared_ranking = false;
};

// Projects the dataset onto the top-k ranked features for every k and
// evaluates every algorithm there. Throws KTooLarge.
ComparisonReport sweep_topk(const Dataset& dataset,
                            const RankedFeatures& ranked,
                            const SweepOptions& options);

enum class CompareMode { kAll, kOverlap };
CompareMode parse_compare_mode(std::string_view name);

// Each environment is ranked on its own data (or on both pooled, with
// shared_ranking) and swept independently. In overlap mode both datasets are
// first restricted to the apps they share. Environments are named by dataset
// tag; equal tags throw UsageError, and shared_ranking needs identical
// vocabularies.
ComparisonReport compare_environments(const Dataset& a, const Dataset& b,
                                      const SweepOptions& options,
                                      CompareMode mode);

std::vector<FeatureDelta> feature_deltas(const Dataset& a, const Dataset& b);

// One row per cell: environment algorithm k protocol tp fp tn fn tpr fpr tnr
// fnr f_malware f_benign weighted_f accuracy. Four decimals.
std::string format_report_tsv(const ComparisonReport& report);
// The same cells as a space-aligned table for terminals.
std::string format_report_table(const ComparisonReport& report);
// algorithm,k,<weighted F per environment>
std::string format_plot_csv(const ComparisonReport& report);
std::string format_deltas_tsv(const ComparisonReport& report);
std::string format_accuracy_tsv(const ComparisonReport& report);

}  // namespace droidbench

#endif  // DROIDBENCH_EVALUATION_HPP
