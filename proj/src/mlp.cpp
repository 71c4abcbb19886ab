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

#include "droidbench/classifiers.hpp"
#include "droidbench/error.hpp"
#include "droidbench/random.hpp"

namespace droidbench {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::size_t default_hidden(std::size_t d) { return (d + 3) / 2; }

// Indices of the set bits of every row; inputs are sparse and binary, so the
// first layer only ever touches these columns.
std::vector<std::vector<std::uint32_t>> active_columns(const Dataset& data) {
  std::vector<std::vector<std::uint32_t>> active(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto& bits = data.row(r).bits;
    for (std::size_t f = 0; f < bits.size(); ++f) {
      if (bits[f]) active[r].push_back(static_cast<std::uint32_t>(f));
    }
  }
  return active;
}

struct Gradient {
  std::vector<double> w1, b1, w2;
  double b2 = 0.0;
};

// Mean cross-entropy; fills `grad` when given.
double loss_and_gradient(const MlpModel& m, const Dataset& data,
                         const std::vector<std::vector<std::uint32_t>>& active,
                         Gradient* grad) {
  const std::size_t d = data.feature_count();
  const std::size_t h = m.hidden;
  if (grad != nullptr) {
    grad->w1.assign(h * d, 0.0);
    grad->b1.assign(h, 0.0);
    grad->w2.assign(h, 0.0);
    grad->b2 = 0.0;
  }
  std::vector<double> hidden(h);
  double loss = 0.0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    const std::vector<std::uint32_t>& cols = active[r];
    double z2 = m.b2;
    for (std::size_t j = 0; j < h; ++j) {
      double z = m.b1[j];
      const double* w = m.w1.data() + j * d;
      for (std::uint32_t c : cols) z += w[c];
      hidden[j] = sigmoid(z);
      z2 += m.w2[j] * hidden[j];
    }
    const double y = data.row(r).label == Label::kMalware ? 1.0 : 0.0;
    // Cross-entropy in terms of the logit, stable for saturated outputs.
    loss += z2 > 0 ? (1.0 - y) * z2 + std::log1p(std::exp(-z2))
                   : -y * z2 + std::log1p(std::exp(z2));
    if (grad == nullptr) continue;
    const double delta = sigmoid(z2) - y;
    grad->b2 += delta;
    for (std::size_t j = 0; j < h; ++j) {
      grad->w2[j] += delta * hidden[j];
      const double dj = delta * m.w2[j] * hidden[j] * (1.0 - hidden[j]);
      grad->b1[j] += dj;
      double* g = grad->w1.data() + j * d;
      for (std::uint32_t c : cols) g[c] += dj;
    }
  }
  const double n = static_cast<double>(data.size());
  if (grad != nullptr) {
    for (double& v : grad->w1) v /= n;
    for (double& v : grad->b1) v /= n;
    for (double& v : grad->w2) v /= n;
    grad->b2 /= n;
  }
  return loss / n;
}

void check_shape(const MlpModel& m, const Dataset& data) {
  if (m.w1.size() != m.hidden * data.feature_count()) {
    throw DimensionMismatch("network input width does not match the dataset");
  }
}

}  // namespace

MlpModel mlp_initial_model(std::size_t feature_count, const TrainConfig& cfg) {
  MlpModel m;
  m.hidden = cfg.mlp_hidden != 0 ? cfg.mlp_hidden : default_hidden(feature_count);
  Rng rng(cfg.seed);
  const double r = cfg.mlp_init_range;
  m.w1.resize(m.hidden * feature_count);
  for (double& w : m.w1) w = rng.uniform(-r, r);
  m.b1.resize(m.hidden);
  for (double& b : m.b1) b = rng.uniform(-r, r);
  m.w2.resize(m.hidden);
  for (double& w : m.w2) w = rng.uniform(-r, r);
  m.b2 = rng.uniform(-r, r);
  return m;
}

double mlp_loss(const MlpModel& model, const Dataset& data) {
  check_shape(model, data);
  return loss_and_gradient(model, data, active_columns(data), nullptr);
}

std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data) {
  check_shape(model, data);
  Gradient g;
  loss_and_gradient(model, data, active_columns(data), &g);
  std::vector<double> flat;
  flat.reserve(g.w1.size() + g.b1.size() + g.w2.size() + 1);
  flat.insert(flat.end(), g.w1.begin(), g.w1.end());
  flat.insert(flat.end(), g.b1.begin(), g.b1.end());
  flat.insert(flat.end(), g.w2.begin(), g.w2.end());
  flat.push_back(g.b2);
  return flat;
}

std::vector<double> mlp_parameters(const MlpModel& model) {
  std::vector<double> flat(model.w1);
  flat.insert(flat.end(), model.b1.begin(), model.b1.end());
  flat.insert(flat.end(), model.w2.begin(), model.w2.end());
  flat.push_back(model.b2);
  return flat;
}

MlpModel mlp_with_parameters(const MlpModel& shape,
                             std::span<const double> params) {
  const std::size_t expected =
      shape.w1.size() + shape.b1.size() + shape.w2.size() + 1;
  if (params.size() != expected) {
    throw DimensionMismatch("expected " + std::to_string(expected) +
                            " parameters, got " + std::to_string(params.size()));
  }
  MlpModel m = shape;
  auto it = params.begin();
  std::copy_n(it, m.w1.size(), m.w1.begin());
  it += static_cast<std::ptrdiff_t>(m.w1.size());
  std::copy_n(it, m.b1.size(), m.b1.begin());
  it += static_cast<std::ptrdiff_t>(m.b1.size());
  std::copy_n(it, m.w2.size(), m.w2.begin());
  it += static_cast<std::ptrdiff_t>(m.w2.size());
  m.b2 = *it;
  return m;
}

Model train_mlp(const Dataset& train, const TrainConfig& cfg) {
  if (train.empty()) throw DatasetTooSmall("MLP on no rows");
  const std::size_t d = train.feature_count();
  MlpModel m = mlp_initial_model(d, cfg);
  const auto active = active_columns(train);
  Gradient g;
  for (std::size_t epoch = 0; epoch < cfg.mlp_epochs; ++epoch) {
    const double loss = loss_and_gradient(m, train, active, &g);
    if (!std::isfinite(loss)) {
      throw Divergence("MLP loss became non-finite at epoch " +
                       std::to_string(epoch));
    }
    const double rate = cfg.mlp_rate;
    for (std::size_t i = 0; i < m.w1.size(); ++i) m.w1[i] -= rate * g.w1[i];
    for (std::size_t j = 0; j < m.hidden; ++j) {
      m.b1[j] -= rate * g.b1[j];
      m.w2[j] -= rate * g.w2[j];
    }
    m.b2 -= rate * g.b2;
  }
  if (cfg.mlp_epochs > 0 &&
      !std::isfinite(loss_and_gradient(m, train, active, nullptr))) {
    throw Divergence("MLP loss became non-finite after training");
  }
  return Model(std::move(m), d, cfg);
}

}  // namespace droidbench
