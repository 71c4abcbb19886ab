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

// Helpers shared by the unit tests: small dataset builders and independent
// reference computations. The reference code deliberately avoids the
// library's own arithmetic so a bug cannot cancel itself out.

#ifndef DROIDBENCH_TESTS_SUPPORT_HPP
#define DROIDBENCH_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "droidbench/dataset.hpp"

namespace testing_support {

using droidbench::Dataset;
using droidbench::FeatureVector;
using droidbench::Label;
using droidbench::Vocabulary;

inline std::vector<std::string> feature_names(std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back("f" + std::to_string(i));
  return names;
}

// Rows given as bit strings plus a label character: {"101m", "010b"}.
inline Dataset make_dataset(const std::vector<std::string>& rows,
                            const std::string& tag = "test") {
  const std::size_t d = rows.empty() ? 0 : rows[0].size() - 1;
  std::vector<FeatureVector> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    FeatureVector row;
    row.app_id = "r" + std::to_string(r);
    for (std::size_t i = 0; i < d; ++i) {
      row.bits.push_back(rows[r][i] == '1' ? 1 : 0);
    }
    row.label = rows[r][d] == 'm' ? Label::kMalware : Label::kBenign;
    out.push_back(std::move(row));
  }
  return Dataset(Vocabulary(feature_names(d)), std::move(out), tag);
}

// Uniform random dataset. Both classes are present whenever n >= 2.
inline Dataset random_dataset(std::mt19937_64& gen, std::size_t n,
                              std::size_t d, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  std::bernoulli_distribution coin(0.5);
  std::vector<FeatureVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    FeatureVector row;
    row.app_id = "app" + std::to_string(r);
    for (std::size_t i = 0; i < d; ++i) row.bits.push_back(bit(gen) ? 1 : 0);
    row.label = coin(gen) ? Label::kMalware : Label::kBenign;
    if (n >= 2 && r == 0) row.label = Label::kMalware;
    if (n >= 2 && r == 1) row.label = Label::kBenign;
    rows.push_back(std::move(row));
  }
  return Dataset(Vocabulary(feature_names(d)), std::move(rows), "random");
}

// -sum p log2 p written out term by term.
inline double oracle_entropy(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  double h = 0;
  for (double c : counts) {
    if (c > 0) h -= (c / total) * (std::log(c / total) / std::log(2.0));
  }
  return h;
}

// Information gain from an explicit 2x2 contingency table.
inline double oracle_info_gain(const Dataset& ds, std::size_t f) {
  double table[2][2] = {{0, 0}, {0, 0}};  // [bit][is_malware]
  for (const FeatureVector& row : ds.rows()) {
    table[row.bits[f]][row.label == Label::kMalware ? 1 : 0] += 1;
  }
  const double n = static_cast<double>(ds.size());
  const double h = oracle_entropy({table[0][1] + table[1][1],
                                   table[0][0] + table[1][0]});
  double cond = 0;
  for (int v = 0; v < 2; ++v) {
    const double nv = table[v][0] + table[v][1];
    if (nv > 0) cond += nv / n * oracle_entropy({table[v][0], table[v][1]});
  }
  return h - cond;
}

// Naive Bayes malware posterior by plain products of smoothed frequencies.
inline double oracle_nb_malware_posterior(const Dataset& train,
                                          const std::vector<std::uint8_t>& x) {
  double joint[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    const Label label = c == 0 ? Label::kMalware : Label::kBenign;
    double n_c = 0;
    for (const FeatureVector& row : train.rows()) n_c += row.label == label;
    double p = n_c / static_cast<double>(train.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ones = 0;
      for (const FeatureVector& row : train.rows()) {
        if (row.label == label && row.bits[i] == 1) ones += 1;
      }
      const double p_one = (ones + 1) / (n_c + 2);
      p *= x[i] ? p_one : 1 - p_one;
    }
    joint[c] = p;
  }
  return joint[0] / (joint[0] + joint[1]);
}

}  // namespace testing_support

#endif  // DROIDBENCH_TESTS_SUPPORT_HPP
