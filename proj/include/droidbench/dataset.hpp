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

#ifndef DROIDBENCH_DATASET_HPP
#define DROIDBENCH_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "droidbench/label.hpp"
#include "droidbench/log_ingest.hpp"

namespace droidbench {

// Ordered, duplicate-free feature names.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Throws InvalidDataset on empty or repeated names.
  explicit Vocabulary(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Vocabulary& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct FeatureVector {
  std::string app_id;
  std::vector<std::uint8_t> bits;  // 0 or 1, one per vocabulary entry
  Label label = Label::kBenign;

  bool operator==(const FeatureVector&) const = default;
};

// Binary presence matrix with labels. Immutable; every transformation below
// returns a new dataset.
class Dataset {
 public:
  Dataset() = default;
  // Throws InvalidDataset when a row has the wrong width, a non-binary entry
  // or an app id that already appeared.
  Dataset(Vocabulary vocabulary, std::vector<FeatureVector> rows,
          std::string tag);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<FeatureVector>& rows() const { return rows_; }
  const FeatureVector& row(std::size_t i) const { return rows_.at(i); }
  const std::string& tag() const { return tag_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::size_t feature_count() const { return vocabulary_.size(); }
  std::size_t count(Label label) const;

  Dataset with_tag(std::string tag) const;
  // Rows at the given positions, in the given order.
  Dataset subset(std::span<const std::size_t> positions) const;

  bool operator==(const Dataset& other) const = default;

 private:
  Vocabulary vocabulary_;
  std::vector<FeatureVector> rows_;
  std::string tag_;
};

struct BuildReport {
  std::size_t rows = 0;
  // Observed signatures that are not part of the vocabulary.
  std::size_t ignored_observations = 0;
  std::set<std::string> ignored_names;
};

// Row r has bit i set iff vocabulary name i was observed for observation r.
// Throws UnlabeledApp when an observation has no label.
Dataset build_dataset(std::span<const AppObservation> observations,
                      const LabelMap& labels, const Vocabulary& vocabulary,
                      std::string tag, BuildReport* report = nullptr);

// ARFF with binary nominal attributes in vocabulary order, then
// `@attribute class {malware,benign}`. Each data row carries its app id as a
// trailing `%` comment so import restores the dataset exactly.
std::string export_arff(const Dataset& dataset);

// Throws ArffSyntax (with line number) and AttributeMismatch.
Dataset import_arff(std::string_view text);

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Seeded shuffle; the first ceil(n * train_fraction) rows train. With
// `stratified`, the rounding is applied per class instead.
SplitResult split(const Dataset& dataset, double train_fraction,
                  std::uint64_t seed, bool stratified = false);

// Seeded shuffle, then k contiguous test folds; the first n % k folds hold
// one extra row.
std::vector<SplitResult> kfold(const Dataset& dataset, std::size_t k,
                               std::uint64_t seed);

// Keeps the named features in the given order. Throws UnknownFeature.
Dataset project(const Dataset& dataset, std::span<const std::string> names);

// Restricts both datasets to the app ids they share, rows sorted by app id.
// Throws LabelConflict when a shared id is labelled differently.
std::pair<Dataset, Dataset> intersect_apps(const Dataset& a, const Dataset& b);

}  // namespace droidbench

#endif  // DROIDBENCH_DATASET_HPP
