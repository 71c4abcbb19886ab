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

#ifndef DROIDBENCH_CLASSIFIERS_HPP
#define DROIDBENCH_CLASSIFIERS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "droidbench/dataset.hpp"

namespace droidbench {

enum class Algorithm { kNaiveBayes, kTree, kForest, kLogistic, kLinearSvm, kMlp };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kLinearSvm, Algorithm::kNaiveBayes, Algorithm::kLogistic,
    Algorithm::kMlp,       Algorithm::kForest,     Algorithm::kTree};

// Short names used on the command line and in reports: svm nb sl mlp rf j48.
std::string_view to_string(Algorithm algorithm);

// Throws UsageError for unknown names, with a specific message for the
// rule learner and Bayes net, which this toolkit does not provide.
Algorithm parse_algorithm(std::string_view name);

// Every hyperparameter, with its default. Serialized with each model.
struct TrainConfig {
  std::uint64_t seed = 1;

  double nb_alpha = 1.0;

  std::size_t tree_min_leaf = 2;

  std::size_t forest_trees = 100;
  std::size_t forest_features = 0;  // 0 means ceil(sqrt(d))
  bool forest_bootstrap = true;
  std::size_t forest_min_leaf = 1;

  std::size_t logistic_epochs = 500;
  double logistic_rate = 0.1;
  double logistic_lambda = 1e-4;

  std::size_t svm_epochs = 30;
  double svm_c = 1.0;

  std::size_t mlp_hidden = 0;  // 0 means ceil((d + 2) / 2)
  std::size_t mlp_epochs = 200;
  double mlp_rate = 0.3;
  double mlp_init_range = 0.5;

  bool operator==(const TrainConfig&) const = default;
};

// Index 0 is malware, 1 is benign.
struct NaiveBayesModel {
  std::array<double, 2> priors{};
  std::array<std::vector<double>, 2> p_one;  // P(feature = 1 | class)

  bool operator==(const NaiveBayesModel&) const = default;
};

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;
  std::int32_t feature = kLeaf;
  std::array<std::uint32_t, 2> child{};   // taken for bit 0 / bit 1
  std::array<std::uint32_t, 2> counts{};  // malware, benign rows at the node

  bool is_leaf() const { return feature == kLeaf; }
  bool operator==(const TreeNode&) const = default;
};

// nodes[0] is the root.
struct TreeModel {
  std::vector<TreeNode> nodes;

  std::size_t depth() const;
  bool operator==(const TreeModel&) const = default;
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::vector<std::uint64_t> tree_seeds;

  bool operator==(const ForestModel&) const = default;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const LogisticModel&) const = default;
};

struct LinearSvmModel {
  std::vector<double> weights;
  double bias = 0.0;

  bool operator==(const LinearSvmModel&) const = default;
};

// One sigmoid hidden layer feeding one sigmoid output.
struct MlpModel {
  std::size_t hidden = 0;
  std::vector<double> w1;  // hidden x d, row-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  bool operator==(const MlpModel&) const = default;
};

using ModelBody = std::variant<NaiveBayesModel, TreeModel, ForestModel,
                               LogisticModel, LinearSvmModel, MlpModel>;

class Model {
 public:
  Model() = default;
  Model(ModelBody body, std::size_t feature_count, TrainConfig config)
      : body_(std::move(body)),
        feature_count_(feature_count),
        config_(config) {}

  Algorithm algorithm() const;
  std::size_t feature_count() const { return feature_count_; }
  const TrainConfig& config() const { return config_; }
  const ModelBody& body() const { return body_; }

  template <typename T>
  const T& as() const {
    return std::get<T>(body_);
  }

  bool operator==(const Model&) const = default;

 private:
  ModelBody body_;
  std::size_t feature_count_ = 0;
  TrainConfig config_;
};

struct Prediction {
  Label label = Label::kMalware;
  double score = 0.5;  // probability of malware, in [0, 1]
};

// Label is malware iff score >= 0.5. Throws DimensionMismatch.
Prediction predict(const Model& model, std::span<const std::uint8_t> row);

Model train(Algorithm algorithm, const Dataset& train, const TrainConfig& cfg);

// Bernoulli naive Bayes with Laplace smoothing:
// P(f = 1 | c) = (count + alpha) / (n_c + 2 alpha). Throws SingleClassDataset.
Model train_nb(const Dataset& train, const TrainConfig& cfg);
Prediction predict_nb(const Model& model, std::span<const std::uint8_t> row);
// Normalized class posteriors {malware, benign}, computed in log space.
std::array<double, 2> nb_posteriors(const NaiveBayesModel& model,
                                    std::span<const std::uint8_t> row);

// Binary splits chosen by gain ratio among features whose gain is at least
// the average; a node becomes a leaf when it is pure, holds fewer than
// tree_min_leaf rows, or no feature separates its rows. No pruning.
Model train_tree(const Dataset& train, const TrainConfig& cfg);

// Bagged unpruned trees; each split examines a random subset of
// forest_features features. Votes are unweighted.
Model train_forest(const Dataset& train, const TrainConfig& cfg);

// L2-regularized logistic regression, full-batch gradient descent. When
// `loss_trace` is given it receives the objective before every epoch and
// after the last one. Throws Divergence on a non-finite loss.
Model train_logistic(const Dataset& train, const TrainConfig& cfg,
                     std::vector<double>* loss_trace = nullptr);
// lambda/2 |w|^2 + mean log loss; the bias is not regularized.
double logistic_objective(const LogisticModel& model, const Dataset& data,
                          double lambda);

// Primal hinge loss with L2 penalty, minimized by stochastic subgradient
// steps of size 1/(lambda t), lambda = 1/(C n). The bias is treated as the
// weight of a constant feature. Returns the epoch-end iterate with the lowest
// objective.
Model train_svm(const Dataset& train, const TrainConfig& cfg);
// lambda/2 (|w|^2 + b^2) + mean hinge loss, lambda = 1/(C n).
double svm_objective(const LinearSvmModel& model, const Dataset& data,
                     double c);

// Cross-entropy loss, full-batch gradient descent from a seeded uniform init.
// Throws Divergence on a non-finite loss.
Model train_mlp(const Dataset& train, const TrainConfig& cfg);
MlpModel mlp_initial_model(std::size_t feature_count, const TrainConfig& cfg);
// Mean cross-entropy over the dataset.
double mlp_loss(const MlpModel& model, const Dataset& data);
// Gradient of mlp_loss, flattened in the order w1, b1, w2, b2.
std::vector<double> mlp_gradient(const MlpModel& model, const Dataset& data);
std::vector<double> mlp_parameters(const MlpModel& model);
MlpModel mlp_with_parameters(const MlpModel& shape,
                             std::span<const double> params);

// Line-oriented text: `#model <kind> v1`, then `features`, `config` and
// kind-specific blocks, then `end`. Numbers use 17 significant digits.
std::string serialize_model(const Model& model);
// Throws ModelFormatError.
Model parse_model(std::string_view text);

}  // namespace droidbench

#endif  // DROIDBENCH_CLASSIFIERS_HPP
