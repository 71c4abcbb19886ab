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

#ifndef DROIDBENCH_RANKING_HPP
#define DROIDBENCH_RANKING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "droidbench/dataset.hpp"

namespace droidbench {

// Shannon entropy in bits of a class histogram. Zero counts contribute
// nothing. Throws EmptyCounts when the histogram sums to zero.
double entropy(std::span<const std::size_t> counts);

// H(labels) - sum_v (n_v / n) H(labels | feature = v), clamped into
// [0, H(labels)] against rounding.
double info_gain(const Dataset& dataset, std::size_t feature_index);

struct RankedFeature {
  std::string name;
  std::size_t index = 0;  // position in the ranked dataset's vocabulary
  double gain = 0.0;

  bool operator==(const RankedFeature&) const = default;
};

// Descending by gain; equal gains keep vocabulary order.
struct RankedFeatures {
  std::vector<RankedFeature> entries;

  std::size_t size() const { return entries.size(); }
};

RankedFeatures rank_features(const Dataset& dataset);

// First k names in rank order. Throws KTooLarge unless 1 <= k <= size.
std::vector<std::string> top_k(const RankedFeatures& ranked, std::size_t k);

// `rank\tfeature\tgain` with a header; ranks are 1-based. `limit` keeps only
// the first entries.
std::string format_ranking_tsv(const RankedFeatures& ranked,
                               std::optional<std::size_t> limit = std::nullopt);

}  // namespace droidbench

#endif  // DROIDBENCH_RANKING_HPP
