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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "droidbench/classifiers.hpp"
#include "droidbench/error.hpp"
#include "droidbench/random.hpp"

namespace droidbench {

namespace {

double plogp(double count, double total) {
  if (count <= 0) return 0.0;
  const double p = count / total;
  return -p * std::log2(p);
}

double entropy2(double a, double b) {
  const double t = a + b;
  return t > 0 ? plogp(a, t) + plogp(b, t) : 0.0;
}

struct SplitStats {
  std::size_t feature = 0;
  double gain = 0.0;
  double ratio = 0.0;
};

// Grows one unpruned tree over a row subset. A forest passes an Rng and a
// per-node feature budget; a plain tree passes neither and examines every
// feature.
class Grower {
 public:
  Grower(const Dataset& data, std::size_t min_leaf, Rng* rng,
         std::size_t subset_size)
      : data_(data),
        min_leaf_(min_leaf),
        rng_(rng),
        subset_size_(subset_size) {}

  TreeModel grow(std::vector<std::size_t> rows) {
    TreeModel tree;
    nodes_ = &tree.nodes;
    build(rows);
    return tree;
  }

 private:
  std::uint32_t build(const std::vector<std::size_t>& rows) {
    const auto id = static_cast<std::uint32_t>(nodes_->size());
    nodes_->emplace_back();
    std::array<std::uint32_t, 2> counts{};
    for (std::size_t r : rows) {
      ++counts[data_.row(r).label == Label::kMalware ? 0 : 1];
    }
    (*nodes_)[id].counts = counts;
    if (counts[0] == 0 || counts[1] == 0 || rows.size() < min_leaf_) {
      return id;
    }
    const std::optional<std::size_t> feature = choose(rows, counts);
    if (!feature) return id;

    std::vector<std::size_t> side[2];
    for (std::size_t r : rows) side[data_.row(r).bits[*feature]].push_back(r);
    const std::uint32_t zero = build(side[0]);
    const std::uint32_t one = build(side[1]);
    TreeNode& node = (*nodes_)[id];
    node.feature = static_cast<std::int32_t>(*feature);
    node.child = {zero, one};
    return id;
  }

  // Returns nullopt when no candidate feature separates the rows.
  std::optional<std::size_t> choose(const std::vector<std::size_t>& rows,
                                    const std::array<std::uint32_t, 2>& counts) {
    const std::size_t d = data_.feature_count();
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t budget = d;
    if (rng_ != nullptr) {
      rng_->shuffle(order);
      budget = std::min(subset_size_, d);
    }

    const double n = static_cast<double>(rows.size());
    const double parent = entropy2(counts[0], counts[1]);
    std::vector<SplitStats> candidates;
    for (std::size_t pos = 0; pos < d; ++pos) {
      // A forest keeps drawing past its budget until one usable split turns
      // up, so a node is never made a leaf just because of an unlucky draw.
      if (pos >= budget && !candidates.empty()) break;
      const std::size_t f = order[pos];
      double ones[2] = {0, 0};
      for (std::size_t r : rows) {
        const FeatureVector& row = data_.row(r);
        if (row.bits[f]) ones[row.label == Label::kMalware ? 0 : 1] += 1;
      }
      const double n1 = ones[0] + ones[1];
      if (n1 == 0 || n1 == n) continue;
      const double zeros[2] = {counts[0] - ones[0], counts[1] - ones[1]};
      const double n0 = n - n1;
      const double cond = (n1 / n) * entropy2(ones[0], ones[1]) +
                          (n0 / n) * entropy2(zeros[0], zeros[1]);
      const double gain = std::max(0.0, parent - cond);
      const double split_info = entropy2(n1, n0);
      candidates.push_back({f, gain, gain / split_info});
    }
    if (candidates.empty()) return std::nullopt;

    double mean_gain = 0.0;
    for (const SplitStats& c : candidates) mean_gain += c.gain;
    mean_gain /= static_cast<double>(candidates.size());

    const SplitStats* best = nullptr;
    for (const SplitStats& c : candidates) {
      if (c.gain + 1e-12 < mean_gain) continue;
      if (best == nullptr || c.ratio > best->ratio + 1e-12 ||
          (std::abs(c.ratio - best->ratio) <= 1e-12 &&
           c.feature < best->feature)) {
        best = &c;
      }
    }
    return best->feature;
  }

  const Dataset& data_;
  std::size_t min_leaf_;
  Rng* rng_;
  std::size_t subset_size_;
  std::vector<TreeNode>* nodes_ = nullptr;
};

std::vector<std::size_t> all_rows(const Dataset& data) {
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

}  // namespace

std::size_t TreeModel::depth() const {
  if (nodes.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, level] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, level);
    if (!nodes[i].is_leaf()) {
      stack.push_back({nodes[i].child[0], level + 1});
      stack.push_back({nodes[i].child[1], level + 1});
    }
  }
  return deepest;
}

Model train_tree(const Dataset& train, const TrainConfig& cfg) {
  if (train.empty()) throw DatasetTooSmall("decision tree on no rows");
  Grower grower(train, cfg.tree_min_leaf, nullptr, 0);
  return Model(grower.grow(all_rows(train)), train.feature_count(), cfg);
}

Model train_forest(const Dataset& train, const TrainConfig& cfg) {
  if (train.empty()) throw DatasetTooSmall("random forest on no rows");
  if (cfg.forest_trees == 0) throw UsageError("forest_trees must be >= 1");
  const std::size_t d = train.feature_count();
  const std::size_t m =
      cfg.forest_features != 0
          ? cfg.forest_features
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));

  ForestModel forest;
  forest.trees.reserve(cfg.forest_trees);
  for (std::size_t t = 0; t < cfg.forest_trees; ++t) {
    const std::uint64_t seed = derive_seed(cfg.seed, t);
    Rng rng(seed);
    std::vector<std::size_t> rows;
    if (cfg.forest_bootstrap) {
      rows.resize(train.size());
      for (std::size_t& r : rows) r = rng.below(train.size());
    } else {
      rows = all_rows(train);
    }
    Grower grower(train, cfg.forest_min_leaf, &rng, m);
    forest.trees.push_back(grower.grow(std::move(rows)));
    forest.tree_seeds.push_back(seed);
  }
  return Model(std::move(forest), d, cfg);
}

}  // namespace droidbench
