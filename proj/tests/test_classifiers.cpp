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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "droidbench/classifiers.hpp"
#include "droidbench/corpus.hpp"
#include "droidbench/error.hpp"
#include "support.hpp"

namespace droidbench {
namespace {

using testing_support::make_dataset;
using testing_support::oracle_nb_malware_posterior;
using testing_support::random_dataset;

double training_accuracy(const Model& model, const Dataset& ds) {
  std::size_t hits = 0;
  for (const auto& row : ds.rows()) hits += predict(model, row.bits).label == row.label;
  return static_cast<double>(hits) / static_cast<double>(ds.size());
}

Dataset xor_dataset() { return make_dataset({"00b", "01m", "10m", "11b"}); }

// Independent sigmoid for the reference computations below.
double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

TEST(Algorithms, NamesRoundTripAndOutOfScope) {
  for (Algorithm a : kAllAlgorithms) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW(parse_algorithm("part"), UsageError);
  EXPECT_THROW(parse_algorithm("bayesnet"), UsageError);
  EXPECT_THROW(parse_algorithm("knn"), UsageError);
}

// --- naive Bayes -----------------------------------------------------------

TEST(NaiveBayes, ConditionalsMatchClosedForm) {
  const Dataset ds = make_dataset({"11m", "10m", "01b", "00b"});
  const Model model = train_nb(ds, {});
  const auto& nb = model.as<NaiveBayesModel>();
  EXPECT_DOUBLE_EQ(nb.priors[0], 0.5);
  EXPECT_DOUBLE_EQ(nb.priors[1], 0.5);
  // (count + 1) / (n_c + 2), counted by hand from the four rows.
  EXPECT_DOUBLE_EQ(nb.p_one[0][0], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(nb.p_one[0][1], 2.0 / 4.0);
  EXPECT_DOUBLE_EQ(nb.p_one[1][0], 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(nb.p_one[1][1], 2.0 / 4.0);
}

TEST(NaiveBayes, AlwaysPresentFeatureOverThreeRows) {
  const Dataset ds = make_dataset({"1m", "1m", "1m", "0b"});
  const Model model = train_nb(ds, {});
  EXPECT_DOUBLE_EQ(model.as<NaiveBayesModel>().p_one[0][0], 4.0 / 5.0);
}

TEST(NaiveBayes, PosteriorMatchesJointEnumeration) {
  const Dataset ds = make_dataset({"11m", "10m", "01b", "00b"});
  const Model model = train_nb(ds, {});
  const std::vector<std::uint8_t> x{1, 0};
  EXPECT_NEAR(predict(model, x).score, oracle_nb_malware_posterior(ds, x), 1e-12);

  std::mt19937_64 gen(30);
  const Dataset big = random_dataset(gen, 40, 6);
  const Model m2 = train_nb(big, {});
  for (const auto& row : big.rows()) {
    EXPECT_NEAR(predict(m2, row.bits).score, oracle_nb_malware_posterior(big, row.bits), 1e-12);
    const auto post = nb_posteriors(m2.as<NaiveBayesModel>(), row.bits);
    EXPECT_NEAR(post[0] + post[1], 1.0, 1e-12);
  }
}

TEST(NaiveBayes, SymmetricModelScoresHalf) {
  const Dataset ds = make_dataset({"10m", "01m", "10b", "01b"});
  EXPECT_DOUBLE_EQ(predict(train_nb(ds, {}), std::vector<std::uint8_t>{0, 0}).score, 0.5);
  EXPECT_EQ(predict(train_nb(ds, {}), std::vector<std::uint8_t>{0, 0}).label, Label::kMalware);
}

TEST(NaiveBayes, SingleClassThrows) {
  EXPECT_THROW(train_nb(make_dataset({"1m", "0m"}), {}), SingleClassDataset);
}

// --- tree ------------------------------------------------------------------

void expect_features_once(const TreeModel& tree, std::size_t node, std::set<int> used) {
  const TreeNode& n = tree.nodes.at(node);
  if (n.is_leaf()) return;
  EXPECT_TRUE(used.insert(n.feature).second) << "feature " << n.feature << " repeated";
  expect_features_once(tree, n.child[0], used);
  expect_features_once(tree, n.child[1], used);
}

TEST(Tree, PerfectFeatureGivesDepthOne) {
  const Dataset ds = make_dataset({"01m", "11m", "00b", "10b", "01m", "00b"});
  const Model model = train_tree(ds, {});
  EXPECT_EQ(model.as<TreeModel>().depth(), 1u);
  EXPECT_EQ(model.as<TreeModel>().nodes[0].feature, 1);
  EXPECT_DOUBLE_EQ(training_accuracy(model, ds), 1.0);
}

TEST(Tree, PureInputIsOneLeaf) {
  const Model model = train_tree(make_dataset({"01m", "11m", "10m"}), {});
  ASSERT_EQ(model.as<TreeModel>().nodes.size(), 1u);
  EXPECT_TRUE(model.as<TreeModel>().nodes[0].is_leaf());
}

TEST(Tree, XorNeedsDepthTwo) {
  // Neither feature has any gain on its own, so the root splits on the
  // lowest index and each child then separates perfectly.
  const Model model = train_tree(xor_dataset(), {});
  const TreeModel& tree = model.as<TreeModel>();
  EXPECT_EQ(tree.depth(), 2u);
  EXPECT_EQ(tree.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(training_accuracy(model, xor_dataset()), 1.0);
}

TEST(Tree, FitsEveryConsistentDataset) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset raw = random_dataset(gen, 30, 8);
    // Drop rows that contradict an earlier row with the same bits.
    std::map<std::vector<std::uint8_t>, Label> first;
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < raw.size(); ++r) {
      auto [it, fresh] = first.emplace(raw.row(r).bits, raw.row(r).label);
      if (fresh || it->second == raw.row(r).label) keep.push_back(r);
    }
    const Dataset ds = raw.subset(keep);
    TrainConfig cfg;
    cfg.tree_min_leaf = 1;
    const Model model = train_tree(ds, cfg);
    EXPECT_DOUBLE_EQ(training_accuracy(model, ds), 1.0);
    expect_features_once(model.as<TreeModel>(), 0, {});
    const Model pruned = train_tree(ds, {});
    expect_features_once(pruned.as<TreeModel>(), 0, {});
  }
}

TEST(Tree, EmptyInputThrows) {
  EXPECT_THROW(train_tree(Dataset(Vocabulary({"a"}), {}, "t"), {}), DatasetTooSmall);
}

// --- forest ----------------------------------------------------------------

TEST(Forest, DegenerateForestEqualsTree) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset ds = random_dataset(gen, 40, 7);
    TrainConfig cfg;
    cfg.forest_trees = 1;
    cfg.forest_features = ds.feature_count();
    cfg.forest_bootstrap = false;
    cfg.forest_min_leaf = cfg.tree_min_leaf;
    const Model forest = train_forest(ds, cfg);
    const Model tree = train_tree(ds, cfg);
    for (std::size_t code = 0; code < (1u << 7); ++code) {
      std::vector<std::uint8_t> x(7);
      for (std::size_t i = 0; i < 7; ++i) x[i] = (code >> i) & 1;
      EXPECT_EQ(predict(forest, x).label, predict(tree, x).label);
    }
  }
}

TEST(Forest, SameSeedSameForest) {
  std::mt19937_64 gen(33);
  const Dataset ds = random_dataset(gen, 50, 10);
  TrainConfig cfg;
  cfg.forest_trees = 20;
  EXPECT_EQ(train_forest(ds, cfg), train_forest(ds, cfg));
  EXPECT_EQ(train_forest(ds, cfg).as<ForestModel>().trees.size(), 20u);
  cfg.seed = 2;
  EXPECT_NE(train_forest(ds, cfg), [&] {
    TrainConfig c = cfg;
    c.seed = 1;
    return train_forest(ds, c);
  }());
}

TEST(Forest, AtLeastAsAccurateAsTreeOnPlantedData) {
  CorpusSpec spec;
  spec.seed = 5;
  const Dataset ds = planted_dataset(plan_corpus(spec), spec.env_b);
  const TrainConfig cfg;
  EXPECT_GE(training_accuracy(train_forest(ds, cfg), ds),
            training_accuracy(train_tree(ds, cfg), ds));
}

TEST(Forest, ZeroTreesIsAUsageError) {
  TrainConfig cfg;
  cfg.forest_trees = 0;
  EXPECT_THROW(train_forest(xor_dataset(), cfg), UsageError);
}

// --- logistic --------------------------------------------------------------

TEST(Logistic, SeparableOneFeature) {
  const Dataset ds = make_dataset({"1m", "1m", "0b", "0b", "0b"});
  const Model model = train_logistic(ds, {});
  EXPECT_DOUBLE_EQ(training_accuracy(model, ds), 1.0);
  EXPECT_GT(model.as<LogisticModel>().weights[0], 0.0);
}

TEST(Logistic, GradientVanishesAtReturnedWeights) {
  const Dataset ds = make_dataset({"110m", "101m", "011m", "100b", "010b", "111b", "000b"});
  TrainConfig cfg;
  cfg.logistic_epochs = 5000;
  cfg.logistic_rate = 0.5;
  const Model model = train_logistic(ds, cfg);
  const auto& m = model.as<LogisticModel>();
  std::vector<double> grad(3, 0.0);
  double grad_b = 0;
  for (const auto& row : ds.rows()) {
    double z = m.bias;
    for (std::size_t i = 0; i < 3; ++i) z += m.weights[i] * row.bits[i];
    const double err = logistic(z) - (row.label == Label::kMalware ? 1.0 : 0.0);
    for (std::size_t i = 0; i < 3; ++i) grad[i] += err * row.bits[i] / 7.0;
    grad_b += err / 7.0;
  }
  double norm2 = grad_b * grad_b;
  for (std::size_t i = 0; i < 3; ++i) {
    grad[i] += cfg.logistic_lambda * m.weights[i];
    norm2 += grad[i] * grad[i];
  }
  EXPECT_LT(std::sqrt(norm2), 1e-3);
}

TEST(Logistic, LossTraceIsMonotone) {
  std::mt19937_64 gen(34);
  const Dataset ds = random_dataset(gen, 60, 8);
  std::vector<double> trace;
  const Model model = train_logistic(ds, {}, &trace);
  ASSERT_EQ(trace.size(), TrainConfig{}.logistic_epochs + 1);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] + 1e-15);
  EXPECT_DOUBLE_EQ(trace.back(), logistic_objective(model.as<LogisticModel>(), ds, 1e-4));
}

TEST(Logistic, ZeroWeightsScoreHalf) {
  const Model model(LogisticModel{{0.0, 0.0}, 0.0}, 2, {});
  const Prediction p = predict(model, std::vector<std::uint8_t>{1, 1});
  EXPECT_DOUBLE_EQ(p.score, 0.5);
  EXPECT_EQ(p.label, Label::kMalware);
}

// --- SVM -------------------------------------------------------------------

double hinge_objective(double w0, double w1, double b, const Dataset& ds, double c) {
  const double n = static_cast<double>(ds.size());
  const double lambda = 1.0 / (c * n);
  double loss = 0;
  for (const auto& row : ds.rows()) {
    const double y = row.label == Label::kMalware ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - y * (w0 * row.bits[0] + w1 * row.bits[1] + b));
  }
  return loss / n + 0.5 * lambda * (w0 * w0 + w1 * w1 + b * b);
}

TEST(Svm, SeparableDataHasZeroHinge) {
  const Dataset ds = make_dataset({"10m", "11m", "10m", "01b", "00b", "01b"});
  TrainConfig cfg;
  cfg.svm_c = 100.0;
  cfg.svm_epochs = 200;
  const Model model = train_svm(ds, cfg);
  const auto& m = model.as<LinearSvmModel>();
  for (const auto& row : ds.rows()) {
    const double y = row.label == Label::kMalware ? 1.0 : -1.0;
    const double f = m.weights[0] * row.bits[0] + m.weights[1] * row.bits[1] + m.bias;
    EXPECT_GE(y * f, 1.0 - 1e-9);
  }
}

TEST(Svm, SameSeedSameWeights) {
  std::mt19937_64 gen(35);
  const Dataset ds = random_dataset(gen, 50, 6);
  EXPECT_EQ(train_svm(ds, {}), train_svm(ds, {}));
}

TEST(Svm, ObjectiveCloseToGridOptimum) {
  const Dataset ds = make_dataset({"11m", "10m", "01m", "00b", "01b", "10b"});
  double best = std::numeric_limits<double>::infinity();
  double bw0 = 0, bw1 = 0, bb = 0;
  auto scan = [&](double c0, double c1, double cb, double half, double step) {
    for (double w0 = c0 - half; w0 <= c0 + half; w0 += step) {
      for (double w1 = c1 - half; w1 <= c1 + half; w1 += step) {
        for (double b = cb - half; b <= cb + half; b += step) {
          const double v = hinge_objective(w0, w1, b, ds, 1.0);
          if (v < best) std::tie(best, bw0, bw1, bb) = std::tuple(v, w0, w1, b);
        }
      }
    }
  };
  scan(0, 0, 0, 4.0, 0.05);
  scan(bw0, bw1, bb, 0.1, 0.002);
  const Model model = train_svm(ds, {});
  const auto& m = model.as<LinearSvmModel>();
  const double got = svm_objective(m, ds, 1.0);
  EXPECT_NEAR(got, hinge_objective(m.weights[0], m.weights[1], m.bias, ds, 1.0), 1e-12);
  EXPECT_LE(got, best * 1.05);
  EXPECT_GE(got, best - 1e-9);
}

TEST(Svm, ScoreIsLogisticOfMargin) {
  const Model model(LinearSvmModel{{2.0, -1.0}, 0.5}, 2, {});
  EXPECT_NEAR(predict(model, std::vector<std::uint8_t>{1, 1}).score, logistic(1.5), 1e-15);
}

TEST(LinearModels, DuplicatingRowsKeepsDecisions) {
  std::mt19937_64 gen(36);
  const Dataset ds = random_dataset(gen, 30, 5);
  std::vector<FeatureVector> doubled = ds.rows();
  for (FeatureVector row : ds.rows()) {
    row.app_id += "-dup";
    doubled.push_back(std::move(row));
  }
  const Dataset twice(ds.vocabulary(), doubled, "t");
  const Model once = train_logistic(ds, {});
  const Model again = train_logistic(twice, {});
  for (const auto& row : ds.rows()) {
    EXPECT_EQ(predict(once, row.bits).label, predict(again, row.bits).label);
    EXPECT_NEAR(predict(once, row.bits).score, predict(again, row.bits).score, 1e-9);
  }
  // With lambda = 1 / (C n), the doubled set at C / 2 has the same minimizer.
  const Dataset sep = make_dataset({"10m", "11m", "01b", "00b"});
  std::vector<FeatureVector> sep_rows = sep.rows();
  for (FeatureVector row : sep.rows()) {
    row.app_id += "-dup";
    sep_rows.push_back(std::move(row));
  }
  TrainConfig half;
  half.svm_c = 0.5;
  half.svm_epochs = 400;
  TrainConfig full;
  full.svm_epochs = 400;
  const Model s1 = train_svm(sep, full);
  const Model s2 = train_svm(Dataset(sep.vocabulary(), sep_rows, "t"), half);
  for (const auto& row : sep.rows()) {
    EXPECT_EQ(predict(s1, row.bits).label, predict(s2, row.bits).label);
  }
}

// --- MLP -------------------------------------------------------------------

TEST(Mlp, HiddenWidthDefault) {
  EXPECT_EQ(mlp_initial_model(3, {}).hidden, 3u);
  EXPECT_EQ(mlp_initial_model(4, {}).hidden, 3u);
  EXPECT_EQ(mlp_initial_model(178, {}).hidden, 90u);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
  const Dataset ds = make_dataset({"101m", "011m", "110b", "000b", "111m"});
  TrainConfig cfg;
  cfg.mlp_init_range = 1.0;
  cfg.seed = 4;
  const MlpModel model = mlp_initial_model(3, cfg);
  const std::vector<double> analytic = mlp_gradient(model, ds);
  std::vector<double> params = mlp_parameters(model);
  ASSERT_EQ(analytic.size(), params.size());
  const double h = 1e-5;
  double worst = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    std::vector<double> up = params;
    std::vector<double> down = params;
    up[i] += h;
    down[i] -= h;
    const double numeric = (mlp_loss(mlp_with_parameters(model, up), ds) -
                            mlp_loss(mlp_with_parameters(model, down), ds)) /
                           (2 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]), 1e-6});
    worst = std::max(worst, std::abs(numeric - analytic[i]) / scale);
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Mlp, LearnsXorForSomeSeed) {
  TrainConfig cfg;
  cfg.mlp_epochs = 3000;
  cfg.mlp_rate = 1.0;
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    solved += training_accuracy(train_mlp(xor_dataset(), cfg), xor_dataset()) == 1.0;
  }
  EXPECT_GE(solved, 1);
}

TEST(Mlp, ZeroEpochsKeepsInitialWeights) {
  TrainConfig cfg;
  cfg.mlp_epochs = 0;
  const Model model = train_mlp(xor_dataset(), cfg);
  EXPECT_EQ(model.as<MlpModel>(), mlp_initial_model(2, cfg));
}

// --- predict and serialization ---------------------------------------------

TEST(Predict, ForestVoteFraction) {
  ForestModel forest;
  for (int t = 0; t < 100; ++t) {
    TreeModel leaf;
    leaf.nodes.push_back(TreeNode{TreeNode::kLeaf, {0, 0}, t < 73 ? std::array<std::uint32_t, 2>{3, 1}
                                                                   : std::array<std::uint32_t, 2>{0, 2}});
    forest.trees.push_back(leaf);
    forest.tree_seeds.push_back(static_cast<std::uint64_t>(t));
  }
  const Model model(forest, 1, {});
  EXPECT_DOUBLE_EQ(predict(model, std::vector<std::uint8_t>{0}).score, 0.73);
}

TEST(Predict, WrongWidthThrows) {
  const Model model = train_nb(xor_dataset(), {});
  EXPECT_THROW(predict(model, std::vector<std::uint8_t>{1}), DimensionMismatch);
}

TrainConfig quick_config() {
  TrainConfig cfg;
  cfg.forest_trees = 5;
  cfg.mlp_epochs = 20;
  cfg.logistic_epochs = 20;
  return cfg;
}

TEST(Predict, ScoresInRangeAndIdenticalRowsAgree) {
  std::mt19937_64 gen(37);
  const Dataset ds = random_dataset(gen, 40, 6);
  for (Algorithm a : kAllAlgorithms) {
    const Model model = train(a, ds, quick_config());
    EXPECT_EQ(model.algorithm(), a);
    for (const auto& row : ds.rows()) {
      const std::vector<std::uint8_t> copy = row.bits;
      const Prediction p = predict(model, row.bits);
      EXPECT_GE(p.score, 0.0);
      EXPECT_LE(p.score, 1.0);
      EXPECT_EQ(p.label, p.score >= 0.5 ? Label::kMalware : Label::kBenign);
      EXPECT_EQ(predict(model, copy).score, p.score);
    }
  }
}

TEST(Serialization, RoundTripsEveryKind) {
  std::mt19937_64 gen(38);
  const Dataset ds = random_dataset(gen, 40, 6);
  for (Algorithm a : kAllAlgorithms) {
    const Model model = train(a, ds, quick_config());
    const std::string text = serialize_model(model);
    EXPECT_EQ(text.rfind("#model ", 0), 0u);
    const Model back = parse_model(text);
    EXPECT_EQ(back, model) << to_string(a);
    EXPECT_EQ(serialize_model(back), text);
  }
}

TEST(Serialization, RejectsDamagedText) {
  const std::string text = serialize_model(train_nb(xor_dataset(), {}));
  EXPECT_THROW(parse_model(""), ModelFormatError);
  EXPECT_THROW(parse_model("#model nb v2\n"), ModelFormatError);
  EXPECT_THROW(parse_model(text.substr(0, text.size() / 2)), ModelFormatError);
}

TEST(Determinism, EveryTrainerIsPure) {
  std::mt19937_64 gen(39);
  const Dataset ds = random_dataset(gen, 30, 5);
  for (Algorithm a : kAllAlgorithms) {
    EXPECT_EQ(train(a, ds, quick_config()), train(a, ds, quick_config())) << to_string(a);
  }
}

}  // namespace
}  // namespace droidbench
