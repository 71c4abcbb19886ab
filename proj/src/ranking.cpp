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

#include "droidbench/ranking.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

double entropy(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) throw EmptyCounts("entropy of an empty histogram");
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

std::size_t label_slot(Label label) { return label == Label::kMalware ? 0 : 1; }

double gain_from_table(const std::array<std::array<std::size_t, 2>, 2>& table,
                       double label_entropy, double n) {
  double conditional = 0.0;
  for (const auto& branch : table) {
    const std::size_t n_v = branch[0] + branch[1];
    if (n_v == 0) continue;
    conditional += static_cast<double>(n_v) / n * entropy(branch);
  }
  return std::clamp(label_entropy - conditional, 0.0, label_entropy);
}

}  // namespace

double info_gain(const Dataset& dataset, std::size_t feature_index) {
  if (feature_index >= dataset.feature_count()) {
    throw UsageError("feature index " + std::to_string(feature_index) +
                     " out of range");
  }
  std::array<std::size_t, 2> labels{};
  std::array<std::array<std::size_t, 2>, 2> table{};
  for (const FeatureVector& row : dataset.rows()) {
    ++labels[label_slot(row.label)];
    ++table[row.bits[feature_index]][label_slot(row.label)];
  }
  const double h = entropy(labels);
  return gain_from_table(table, h, static_cast<double>(dataset.size()));
}

RankedFeatures rank_features(const Dataset& dataset) {
  const std::size_t d = dataset.feature_count();
  std::array<std::size_t, 2> labels{};
  std::vector<std::array<std::array<std::size_t, 2>, 2>> tables(d);
  for (const FeatureVector& row : dataset.rows()) {
    const std::size_t c = label_slot(row.label);
    ++labels[c];
    for (std::size_t f = 0; f < d; ++f) ++tables[f][row.bits[f]][c];
  }
  const double h = entropy(labels);
  const double n = static_cast<double>(dataset.size());

  RankedFeatures ranked;
  ranked.entries.reserve(d);
  for (std::size_t f = 0; f < d; ++f) {
    ranked.entries.push_back(
        {dataset.vocabulary().name(f), f, gain_from_table(tables[f], h, n)});
  }
  std::stable_sort(ranked.entries.begin(), ranked.entries.end(),
                   [](const RankedFeature& a, const RankedFeature& b) {
                     return a.gain > b.gain;
                   });
  return ranked;
}

std::vector<std::string> top_k(const RankedFeatures& ranked, std::size_t k) {
  if (k == 0 || k > ranked.size()) {
    throw KTooLarge("k = " + std::to_string(k) + " outside 1.." +
                    std::to_string(ranked.size()));
  }
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back(ranked.entries[i].name);
  return names;
}

std::string format_ranking_tsv(const RankedFeatures& ranked,
                               std::optional<std::size_t> limit) {
  const std::size_t n = std::min(limit.value_or(ranked.size()), ranked.size());
  std::string out = "rank\tfeature\tgain\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + 1) + '\t' + ranked.entries[i].name + '\t' +
           format_fixed(ranked.entries[i].gain, 6) + '\n';
  }
  return out;
}

}  // namespace droidbench
