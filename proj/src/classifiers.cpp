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

#include "droidbench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "droidbench/error.hpp"
#include "droidbench/random.hpp"

namespace droidbench {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(-z)), stable for large |z|.
double softplus_neg(double z) {
  return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double dot(std::span<const double> w, std::span<const std::uint8_t> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) s += w[i];
  }
  return s;
}

Prediction from_score(double score) {
  return {score >= 0.5 ? Label::kMalware : Label::kBenign, score};
}

void require_both_classes(const Dataset& data, const char* who) {
  if (data.count(Label::kMalware) == 0 || data.count(Label::kBenign) == 0) {
    throw SingleClassDataset(std::string(who) +
                             " needs both classes in the training data");
  }
}

void require_rows(const Dataset& data, const char* who) {
  if (data.empty()) throw DatasetTooSmall(std::string(who) + " on no rows");
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNaiveBayes:
      return "nb";
    case Algorithm::kTree:
      return "j48";
    case Algorithm::kForest:
      return "rf";
    case Algorithm::kLogistic:
      return "sl";
    case Algorithm::kLinearSvm:
      return "svm";
    case Algorithm::kMlp:
      return "mlp";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  if (name == "part") {
    throw UsageError("algorithm 'part' (partial decision tree rules) is out "
                     "of scope for this toolkit");
  }
  if (name == "bayesnet") {
    throw UsageError("algorithm 'bayesnet' is out of scope for this toolkit");
  }
  throw UsageError("unknown algorithm '" + std::string(name) +
                   "' (expected one of svm, nb, sl, mlp, rf, j48)");
}

Algorithm Model::algorithm() const {
  switch (body_.index()) {
    case 0:
      return Algorithm::kNaiveBayes;
    case 1:
      return Algorithm::kTree;
    case 2:
      return Algorithm::kForest;
    case 3:
      return Algorithm::kLogistic;
    case 4:
      return Algorithm::kLinearSvm;
    default:
      return Algorithm::kMlp;
  }
}

Model train(Algorithm algorithm, const Dataset& train,
            const TrainConfig& cfg) {
  switch (algorithm) {
    case Algorithm::kNaiveBayes:
      return train_nb(train, cfg);
    case Algorithm::kTree:
      return train_tree(train, cfg);
    case Algorithm::kForest:
      return train_forest(train, cfg);
    case Algorithm::kLogistic:
      return train_logistic(train, cfg);
    case Algorithm::kLinearSvm:
      return train_svm(train, cfg);
    case Algorithm::kMlp:
      return train_mlp(train, cfg);
  }
  throw UsageError("unknown algorithm");
}

// ---------------------------------------------------------------------------
// Naive Bayes

Model train_nb(const Dataset& train, const TrainConfig& cfg) {
  require_both_classes(train, "naive Bayes");
  if (!(cfg.nb_alpha > 0)) throw UsageError("nb_alpha must be > 0");
  const std::size_t d = train.feature_count();
  std::array<std::size_t, 2> class_rows{};
  std::array<std::vector<std::size_t>, 2> ones{std::vector<std::size_t>(d, 0),
                                               std::vector<std::size_t>(d, 0)};
  for (const FeatureVector& row : train.rows()) {
    const std::size_t c = row.label == Label::kMalware ? 0 : 1;
    ++class_rows[c];
    for (std::size_t f = 0; f < d; ++f) ones[c][f] += row.bits[f];
  }
  NaiveBayesModel nb;
  const double n = static_cast<double>(train.size());
  for (std::size_t c = 0; c < 2; ++c) {
    nb.priors[c] = static_cast<double>(class_rows[c]) / n;
    nb.p_one[c].resize(d);
    for (std::size_t f = 0; f < d; ++f) {
      nb.p_one[c][f] = (static_cast<double>(ones[c][f]) + cfg.nb_alpha) /
                       (static_cast<double>(class_rows[c]) + 2.0 * cfg.nb_alpha);
    }
  }
  return Model(std::move(nb), d, cfg);
}

std::array<double, 2> nb_posteriors(const NaiveBayesModel& model,
                                    std::span<const std::uint8_t> row) {
  std::array<double, 2> log_joint{};
  for (std::size_t c = 0; c < 2; ++c) {
    double s = std::log(model.priors[c]);
    for (std::size_t f = 0; f < row.size(); ++f) {
      const double p = model.p_one[c][f];
      s += row[f] ? std::log(p) : std::log1p(-p);
    }
    log_joint[c] = s;
  }
  const double m = std::max(log_joint[0], log_joint[1]);
  const double a = std::exp(log_joint[0] - m);
  const double b = std::exp(log_joint[1] - m);
  return {a / (a + b), b / (a + b)};
}

Prediction predict_nb(const Model& model, std::span<const std::uint8_t> row) {
  if (row.size() != model.feature_count()) {
    throw DimensionMismatch("row has " + std::to_string(row.size()) +
                            " features, model expects " +
                            std::to_string(model.feature_count()));
  }
  return from_score(nb_posteriors(model.as<NaiveBayesModel>(), row)[0]);
}

// ---------------------------------------------------------------------------
// Logistic regression

double logistic_objective(const LogisticModel& model, const Dataset& data,
                          double lambda) {
  double loss = 0.0;
  for (const FeatureVector& row : data.rows()) {
    const double z = dot(model.weights, row.bits) + model.bias;
    // -log p(y | x) with p = sigmoid(+-z)
    loss += row.label == Label::kMalware ? softplus_neg(z) : softplus_neg(-z);
  }
  loss /= static_cast<double>(data.size());
  double norm = 0.0;
  for (double w : model.weights) norm += w * w;
  return loss + 0.5 * lambda * norm;
}

Model train_logistic(const Dataset& train, const TrainConfig& cfg,
                     std::vector<double>* loss_trace) {
  require_rows(train, "logistic regression");
  const std::size_t d = train.feature_count();
  const double n = static_cast<double>(train.size());
  LogisticModel m{std::vector<double>(d, 0.0), 0.0};
  std::vector<double> grad(d);
  if (loss_trace != nullptr) loss_trace->clear();

  for (std::size_t epoch = 0; epoch <= cfg.logistic_epochs; ++epoch) {
    if (loss_trace != nullptr || epoch == cfg.logistic_epochs) {
      const double loss = logistic_objective(m, train, cfg.logistic_lambda);
      if (!std::isfinite(loss)) {
        throw Divergence("logistic loss became non-finite at epoch " +
                         std::to_string(epoch));
      }
      if (loss_trace != nullptr) loss_trace->push_back(loss);
    }
    if (epoch == cfg.logistic_epochs) break;

    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (const FeatureVector& row : train.rows()) {
      const double y = row.label == Label::kMalware ? 1.0 : 0.0;
      const double g = sigmoid(dot(m.weights, row.bits) + m.bias) - y;
      grad_b += g;
      for (std::size_t f = 0; f < d; ++f) {
        if (row.bits[f]) grad[f] += g;
      }
    }
    for (std::size_t f = 0; f < d; ++f) {
      m.weights[f] -= cfg.logistic_rate *
                      (grad[f] / n + cfg.logistic_lambda * m.weights[f]);
    }
    m.bias -= cfg.logistic_rate * grad_b / n;
  }
  return Model(std::move(m), d, cfg);
}

// ---------------------------------------------------------------------------
// Linear SVM

double svm_objective(const LinearSvmModel& model, const Dataset& data,
                     double c) {
  const double n = static_cast<double>(data.size());
  const double lambda = 1.0 / (c * n);
  double hinge = 0.0;
  for (const FeatureVector& row : data.rows()) {
    const double y = row.label == Label::kMalware ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * (dot(model.weights, row.bits) + model.bias));
  }
  double norm = model.bias * model.bias;
  for (double w : model.weights) norm += w * w;
  return 0.5 * lambda * norm + hinge / n;
}

Model train_svm(const Dataset& train, const TrainConfig& cfg) {
  require_rows(train, "linear SVM");
  if (!(cfg.svm_c > 0)) throw UsageError("svm_c must be > 0");
  const std::size_t d = train.feature_count();
  const std::size_t n = train.size();
  const double lambda = 1.0 / (cfg.svm_c * static_cast<double>(n));

  LinearSvmModel m{std::vector<double>(d, 0.0), 0.0};
  LinearSvmModel best = m;
  double best_objective = svm_objective(m, train, cfg.svm_c);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);
  double t = 0.0;
  for (std::size_t epoch = 0; epoch < cfg.svm_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const FeatureVector& row = train.row(i);
      t += 1.0;
      const double eta = 1.0 / (lambda * t);
      const double y = row.label == Label::kMalware ? 1.0 : -1.0;
      const double margin = y * (dot(m.weights, row.bits) + m.bias);
      const double shrink = 1.0 - eta * lambda;
      for (double& w : m.weights) w *= shrink;
      m.bias *= shrink;
      if (margin < 1.0) {
        for (std::size_t f = 0; f < d; ++f) {
          if (row.bits[f]) m.weights[f] += eta * y;
        }
        m.bias += eta * y;
      }
    }
    const double objective = svm_objective(m, train, cfg.svm_c);
    if (objective < best_objective) {
      best_objective = objective;
      best = m;
    }
  }
  return Model(std::move(best), d, cfg);
}

// ---------------------------------------------------------------------------
// Uniform prediction

Prediction predict(const Model& model, std::span<const std::uint8_t> row) {
  if (row.size() != model.feature_count()) {
    throw DimensionMismatch("row has " + std::to_string(row.size()) +
                            " features, model expects " +
                            std::to_string(model.feature_count()));
  }
  struct Visitor {
    std::span<const std::uint8_t> row;

    double operator()(const NaiveBayesModel& nb) const {
      return nb_posteriors(nb, row)[0];
    }
    double operator()(const TreeModel& tree) const {
      std::uint32_t i = 0;
      while (!tree.nodes[i].is_leaf()) {
        i = tree.nodes[i].child[row[tree.nodes[i].feature]];
      }
      const auto& c = tree.nodes[i].counts;
      return static_cast<double>(c[0]) / static_cast<double>(c[0] + c[1]);
    }
    double operator()(const ForestModel& forest) const {
      std::size_t votes = 0;
      for (const TreeModel& t : forest.trees) {
        if ((*this)(t) >= 0.5) ++votes;
      }
      return static_cast<double>(votes) /
             static_cast<double>(forest.trees.size());
    }
    double operator()(const LogisticModel& m) const {
      return sigmoid(dot(m.weights, row) + m.bias);
    }
    double operator()(const LinearSvmModel& m) const {
      return sigmoid(dot(m.weights, row) + m.bias);
    }
    double operator()(const MlpModel& m) const {
      const std::size_t d = row.size();
      double out = m.b2;
      for (std::size_t j = 0; j < m.hidden; ++j) {
        double z = m.b1[j];
        const double* w = m.w1.data() + j * d;
        for (std::size_t i = 0; i < d; ++i) {
          if (row[i]) z += w[i];
        }
        out += m.w2[j] * sigmoid(z);
      }
      return sigmoid(out);
    }
  };
  return from_score(std::visit(Visitor{row}, model.body()));
}

}  // namespace droidbench
