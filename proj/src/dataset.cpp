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

#include "droidbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "droidbench/error.hpp"
#include "droidbench/random.hpp"

namespace droidbench {

Vocabulary::Vocabulary(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InvalidDataset("empty feature name");
    if (!index_.emplace(names_[i], i).second) {
      throw InvalidDataset("duplicate feature name '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Dataset::Dataset(Vocabulary vocabulary, std::vector<FeatureVector> rows,
                 std::string tag)
    : vocabulary_(std::move(vocabulary)),
      rows_(std::move(rows)),
      tag_(std::move(tag)) {
  std::set<std::string_view> ids;
  for (const FeatureVector& r : rows_) {
    if (r.bits.size() != vocabulary_.size()) {
      throw InvalidDataset("row " + r.app_id + " has " +
                           std::to_string(r.bits.size()) + " bits, expected " +
                           std::to_string(vocabulary_.size()));
    }
    for (std::uint8_t b : r.bits) {
      if (b > 1) throw InvalidDataset("row " + r.app_id + " is not binary");
    }
    if (!ids.insert(r.app_id).second) {
      throw InvalidDataset("duplicate app id " + r.app_id);
    }
  }
}

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(),
                    [&](const FeatureVector& r) { return r.label == label; }));
}

Dataset Dataset::with_tag(std::string tag) const {
  Dataset copy = *this;
  copy.tag_ = std::move(tag);
  return copy;
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
  std::vector<FeatureVector> picked;
  picked.reserve(positions.size());
  for (std::size_t p : positions) picked.push_back(rows_.at(p));
  return Dataset(vocabulary_, std::move(picked), tag_);
}

Dataset build_dataset(std::span<const AppObservation> observations,
                      const LabelMap& labels, const Vocabulary& vocabulary,
                      std::string tag, BuildReport* report) {
  BuildReport local;
  std::vector<FeatureVector> rows;
  rows.reserve(observations.size());
  for (const AppObservation& obs : observations) {
    auto label = labels.find(obs.app_id);
    if (label == labels.end()) {
      throw UnlabeledApp("no label for app " + obs.app_id);
    }
    FeatureVector row{obs.app_id,
                      std::vector<std::uint8_t>(vocabulary.size(), 0),
                      label->second};
    for (const std::string& sig : obs.observed) {
      if (auto i = vocabulary.index_of(sig)) {
        row.bits[*i] = 1;
      } else {
        ++local.ignored_observations;
        local.ignored_names.insert(sig);
      }
    }
    rows.push_back(std::move(row));
  }
  local.rows = rows.size();
  if (report != nullptr) *report = std::move(local);
  return Dataset(vocabulary, std::move(rows), std::move(tag));
}

namespace {

std::vector<std::size_t> shuffled_positions(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

// ceil(n * f) without being tripped up by 100 * 0.66 = 66.000000000000014.
std::size_t ceil_fraction(std::size_t n, double f) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * f - 1e-9));
}

}  // namespace

SplitResult split(const Dataset& dataset, double train_fraction,
                  std::uint64_t seed, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw UsageError("train fraction must lie strictly between 0 and 1");
  }
  const auto order = shuffled_positions(dataset.size(), seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  if (stratified) {
    for (Label label : kAllLabels) {
      std::vector<std::size_t> members;
      for (std::size_t p : order) {
        if (dataset.row(p).label == label) members.push_back(p);
      }
      const std::size_t cut = ceil_fraction(members.size(), train_fraction);
      train.insert(train.end(), members.begin(), members.begin() + cut);
      test.insert(test.end(), members.begin() + cut, members.end());
    }
  } else {
    const std::size_t cut = ceil_fraction(order.size(), train_fraction);
    train.assign(order.begin(), order.begin() + std::min(cut, order.size()));
    test.assign(order.begin() + std::min(cut, order.size()), order.end());
  }
  if (train.empty() || test.empty()) {
    throw DatasetTooSmall("split of " + std::to_string(dataset.size()) +
                          " rows leaves one side empty");
  }
  return {dataset.subset(train), dataset.subset(test)};
}

std::vector<SplitResult> kfold(const Dataset& dataset, std::size_t k,
                               std::uint64_t seed) {
  if (k < 2) throw UsageError("k-fold needs k >= 2");
  const std::size_t n = dataset.size();
  if (k > n) {
    throw DatasetTooSmall(std::to_string(k) + " folds over " +
                          std::to_string(n) + " rows");
  }
  const auto order = shuffled_positions(n, seed);
  std::vector<SplitResult> folds;
  folds.reserve(k);
  std::size_t begin = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    std::vector<std::size_t> train;
    std::vector<std::size_t> test(order.begin() + begin,
                                  order.begin() + begin + size);
    train.reserve(n - size);
    train.insert(train.end(), order.begin(), order.begin() + begin);
    train.insert(train.end(), order.begin() + begin + size, order.end());
    folds.push_back({dataset.subset(train), dataset.subset(test)});
    begin += size;
  }
  return folds;
}

Dataset project(const Dataset& dataset, std::span<const std::string> names) {
  std::vector<std::size_t> columns;
  columns.reserve(names.size());
  for (const std::string& name : names) {
    auto i = dataset.vocabulary().index_of(name);
    if (!i) throw UnknownFeature("unknown feature '" + name + "'");
    columns.push_back(*i);
  }
  std::vector<FeatureVector> rows;
  rows.reserve(dataset.size());
  for (const FeatureVector& r : dataset.rows()) {
    FeatureVector out{r.app_id, {}, r.label};
    out.bits.reserve(columns.size());
    for (std::size_t c : columns) out.bits.push_back(r.bits[c]);
    rows.push_back(std::move(out));
  }
  return Dataset(Vocabulary({names.begin(), names.end()}), std::move(rows),
                 dataset.tag());
}

std::pair<Dataset, Dataset> intersect_apps(const Dataset& a, const Dataset& b) {
  std::map<std::string_view, std::size_t> in_a;
  std::map<std::string_view, std::size_t> in_b;
  for (std::size_t i = 0; i < a.size(); ++i) in_a.emplace(a.row(i).app_id, i);
  for (std::size_t i = 0; i < b.size(); ++i) in_b.emplace(b.row(i).app_id, i);
  std::vector<std::size_t> keep_a;
  std::vector<std::size_t> keep_b;
  for (const auto& [id, ia] : in_a) {
    auto it = in_b.find(id);
    if (it == in_b.end()) continue;
    if (a.row(ia).label != b.row(it->second).label) {
      throw LabelConflict("app " + std::string(id) +
                          " is labelled differently in " + a.tag() + " and " +
                          b.tag());
    }
    keep_a.push_back(ia);
    keep_b.push_back(it->second);
  }
  return {a.subset(keep_a), b.subset(keep_b)};
}

}  // namespace droidbench
