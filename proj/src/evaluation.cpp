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

#include "droidbench/evaluation.hpp"

#include <algorithm>

#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// F for one class given its tp, fp and fn; empty when the class has no rows.
std::optional<double> f_measure(std::size_t tp, std::size_t fp,
                                std::size_t fn) {
  if (tp + fn == 0) return std::nullopt;
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<Label> labels_of(const Dataset& data) {
  std::vector<Label> out;
  out.reserve(data.size());
  for (const FeatureVector& row : data.rows()) out.push_back(row.label);
  return out;
}

ConfusionMatrix train_and_score(const Dataset& train_set,
                                const Dataset& test_set, Algorithm algorithm,
                                const TrainConfig& cfg) {
  const Model model = train(algorithm, train_set, cfg);
  std::vector<Label> predicted;
  predicted.reserve(test_set.size());
  for (const FeatureVector& row : test_set.rows()) {
    predicted.push_back(predict(model, row.bits).label);
  }
  return confusion(predicted, labels_of(test_set));
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

}  // namespace

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

ConfusionMatrix confusion(std::span<const Label> predictions,
                          std::span<const Label> labels) {
  if (predictions.size() != labels.size()) {
    throw LengthMismatch(std::to_string(predictions.size()) +
                         " predictions for " + std::to_string(labels.size()) +
                         " labels");
  }
  if (predictions.empty()) throw LengthMismatch("no predictions to score");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool said_malware = predictions[i] == Label::kMalware;
    if (labels[i] == Label::kMalware) {
      ++(said_malware ? cm.tp : cm.fn);
    } else {
      ++(said_malware ? cm.fp : cm.tn);
    }
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t n = cm.total();
  if (n == 0) throw LengthMismatch("metrics of an empty confusion matrix");
  MetricsReport r;
  r.cm = cm;
  r.tpr = ratio(cm.tp, cm.tp + cm.fn);
  r.fnr = ratio(cm.fn, cm.tp + cm.fn);
  r.tnr = ratio(cm.tn, cm.tn + cm.fp);
  r.fpr = ratio(cm.fp, cm.tn + cm.fp);
  r.f_malware = f_measure(cm.tp, cm.fp, cm.fn);
  r.f_benign = f_measure(cm.tn, cm.fn, cm.fp);
  const double n_mal = static_cast<double>(cm.tp + cm.fn);
  const double n_ben = static_cast<double>(cm.tn + cm.fp);
  r.weighted_f = (n_mal * r.f_malware.value_or(0.0) +
                  n_ben * r.f_benign.value_or(0.0)) /
                 static_cast<double>(n);
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
  return r;
}

std::string format_rate(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string("n/a");
}

MetricsReport evaluate_split(const Dataset& dataset, Algorithm algorithm,
                             const TrainConfig& cfg, double train_fraction,
                             std::uint64_t seed) {
  const SplitResult parts = split(dataset, train_fraction, seed);
  return metrics(train_and_score(parts.train, parts.test, algorithm, cfg));
}

CvResult evaluate_cv(const Dataset& dataset, Algorithm algorithm,
                     const TrainConfig& cfg, std::size_t k,
                     std::uint64_t seed) {
  CvResult result;
  ConfusionMatrix pooled;
  for (const SplitResult& fold : kfold(dataset, k, seed)) {
    const ConfusionMatrix cm =
        train_and_score(fold.train, fold.test, algorithm, cfg);
    result.fold_accuracy.push_back(static_cast<double>(cm.tp + cm.tn) /
                                   static_cast<double>(cm.total()));
    pooled += cm;
  }
  double sum = 0.0;
  for (double a : result.fold_accuracy) sum += a;
  result.mean_accuracy = sum / static_cast<double>(result.fold_accuracy.size());
  result.pooled = metrics(pooled);
  return result;
}

Protocol::Kind parse_protocol(std::string_view name) {
  if (name == "split") return Protocol::Kind::kSplit;
  if (name == "cv") return Protocol::Kind::kCv;
  throw UsageError("unknown protocol '" + std::string(name) +
                   "' (expected split or cv)");
}

MetricsReport evaluate(const Dataset& dataset, Algorithm algorithm,
                       const TrainConfig& cfg, const Protocol& protocol) {
  if (protocol.kind == Protocol::Kind::kSplit) {
    return evaluate_split(dataset, algorithm, cfg, protocol.train_fraction,
                          protocol.seed);
  }
  return evaluate_cv(dataset, algorithm, cfg, protocol.folds, protocol.seed)
      .pooled;
}

const GridCell* ComparisonReport::find(std::string_view environment,
                                       Algorithm algorithm,
                                       std::size_t k) const {
  for (const GridCell& cell : cells) {
    if (cell.environment == environment && cell.algorithm == algorithm &&
        cell.k == k) {
      return &cell;
    }
  }
  return nullptr;
}

std::vector<std::string> ComparisonReport::only_in_b() const {
  std::vector<std::string> out;
  for (const FeatureDelta& d : deltas) {
    if (d.total_a() == 0 && d.total_b() > 0) out.push_back(d.feature);
  }
  return out;
}

std::vector<std::string> ComparisonReport::only_in_a() const {
  std::vector<std::string> out;
  for (const FeatureDelta& d : deltas) {
    if (d.total_b() == 0 && d.total_a() > 0) out.push_back(d.feature);
  }
  return out;
}

ComparisonReport sweep_topk(const Dataset& dataset,
                            const RankedFeatures& ranked,
                            const SweepOptions& options) {
  if (options.algorithms.empty()) throw UsageError("no algorithms to sweep");
  if (options.ks.empty()) throw UsageError("no feature counts to sweep");
  // Validate every k before spending time on training.
  for (std::size_t k : options.ks) top_k(ranked, k);

  ComparisonReport report;
  report.environments.push_back(dataset.tag());
  for (Algorithm algorithm : options.algorithms) {
    for (std::size_t k : options.ks) {
      const std::vector<std::string> names = top_k(ranked, k);
      const Dataset projected = project(dataset, names);
      report.cells.push_back({dataset.tag(), algorithm, k,
                              options.protocol.name(),
                              evaluate(projected, algorithm, options.train,
                                       options.protocol)});
      if (options.accuracy_table) {
        const MetricsReport held_out =
            evaluate_split(projected, algorithm, options.train,
                           options.protocol.train_fraction,
                           options.protocol.seed);
        const CvResult cv =
            evaluate_cv(projected, algorithm, options.train,
                        options.protocol.folds, options.protocol.seed);
        report.accuracy.push_back({dataset.tag(), algorithm, k,
                                   held_out.accuracy, cv.mean_accuracy});
      }
    }
  }
  return report;
}

CompareMode parse_compare_mode(std::string_view name) {
  if (name == "all") return CompareMode::kAll;
  if (name == "overlap") return CompareMode::kOverlap;
  throw UsageError("unknown mode '" + std::string(name) +
                   "' (expected all or overlap)");
}

std::vector<FeatureDelta> feature_deltas(const Dataset& a, const Dataset& b) {
  std::vector<std::string> names = a.vocabulary().names();
  for (const std::string& name : b.vocabulary().names()) {
    if (!a.vocabulary().index_of(name)) names.push_back(name);
  }
  auto counts = [](const Dataset& data, const std::string& name) {
    std::pair<std::size_t, std::size_t> c{0, 0};
    const auto idx = data.vocabulary().index_of(name);
    if (!idx) return c;
    for (const FeatureVector& row : data.rows()) {
      if (!row.bits[*idx]) continue;
      ++(row.label == Label::kMalware ? c.first : c.second);
    }
    return c;
  };
  std::vector<FeatureDelta> out;
  out.reserve(names.size());
  for (const std::string& name : names) {
    const auto [ma, ba] = counts(a, name);
    const auto [mb, bb] = counts(b, name);
    out.push_back({name, ma, ba, mb, bb});
  }
  return out;
}

ComparisonReport compare_environments(const Dataset& a, const Dataset& b,
                                      const SweepOptions& options,
                                      CompareMode mode) {
  if (a.tag() == b.tag()) {
    throw UsageError("both datasets are tagged '" + a.tag() +
                     "'; environments need distinct tags");
  }
  Dataset left = a;
  Dataset right = b;
  if (mode == CompareMode::kOverlap) {
    std::tie(left, right) = intersect_apps(a, b);
  }
  RankedFeatures rank_left;
  RankedFeatures rank_right;
  if (options.shared_ranking) {
    if (!(left.vocabulary() == right.vocabulary())) {
      throw UsageError("a shared ranking needs identical vocabularies");
    }
    // Rows are renamed so an app present in both environments counts twice.
    std::vector<FeatureVector> pooled;
    for (const Dataset* side : {&left, &right}) {
      for (FeatureVector row : side->rows()) {
        row.app_id = side->tag() + ":" + row.app_id;
        pooled.push_back(std::move(row));
      }
    }
    rank_left = rank_features(Dataset(left.vocabulary(), std::move(pooled), "pooled"));
    rank_right = rank_left;
  } else {
    rank_left = rank_features(left);
    rank_right = rank_features(right);
  }
  ComparisonReport report = sweep_topk(left, rank_left, options);
  ComparisonReport other = sweep_topk(right, rank_right, options);
  report.environments.push_back(right.tag());
  report.cells.insert(report.cells.end(), other.cells.begin(),
                      other.cells.end());
  report.accuracy.insert(report.accuracy.end(), other.accuracy.begin(),
                         other.accuracy.end());
  report.deltas = feature_deltas(left, right);
  return report;
}

std::string format_report_tsv(const ComparisonReport& report) {
  std::string out =
      "environment\talgorithm\tk\tprotocol\ttp\tfp\ttn\tfn\ttpr\tfpr\ttnr\tfnr"
      "\tf_malware\tf_benign\tweighted_f\taccuracy\n";
  for (const GridCell& c : report.cells) {
    const MetricsReport& m = c.metrics;
    out += c.environment + '\t' + std::string(to_string(c.algorithm)) + '\t' +
           std::to_string(c.k) + '\t' + c.protocol + '\t' +
           std::to_string(m.cm.tp) + '\t' + std::to_string(m.cm.fp) + '\t' +
           std::to_string(m.cm.tn) + '\t' + std::to_string(m.cm.fn) + '\t' +
           format_rate(m.tpr) + '\t' + format_rate(m.fpr) + '\t' +
           format_rate(m.tnr) + '\t' + format_rate(m.fnr) + '\t' +
           format_rate(m.f_malware) + '\t' + format_rate(m.f_benign) + '\t' +
           format_fixed(m.weighted_f, 4) + '\t' + format_fixed(m.accuracy, 4) +
           '\n';
  }
  return out;
}

std::string format_report_table(const ComparisonReport& report) {
  std::vector<std::vector<std::string>> rows{
      {"environment", "algo", "k", "protocol", "TPR", "FPR", "TNR", "FNR",
       "W-FM", "accuracy"}};
  for (const GridCell& c : report.cells) {
    const MetricsReport& m = c.metrics;
    rows.push_back({c.environment, std::string(to_string(c.algorithm)),
                    std::to_string(c.k), c.protocol, format_rate(m.tpr, 3),
                    format_rate(m.fpr, 3), format_rate(m.tnr, 3),
                    format_rate(m.fnr, 3), format_fixed(m.weighted_f, 3),
                    format_fixed(m.accuracy, 3)});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 < row.size() ? pad(row[i], width[i] + 2) : row[i];
    }
    out += line + '\n';
  }
  return out;
}

std::string format_plot_csv(const ComparisonReport& report) {
  std::string out = "algorithm,k";
  for (const std::string& env : report.environments) out += ',' + env;
  out += '\n';
  // Key order follows the first environment's cells.
  std::vector<std::pair<Algorithm, std::size_t>> keys;
  for (const GridCell& c : report.cells) {
    if (c.environment != report.environments.front()) continue;
    keys.emplace_back(c.algorithm, c.k);
  }
  for (const auto& [algorithm, k] : keys) {
    out += std::string(to_string(algorithm)) + ',' + std::to_string(k);
    for (const std::string& env : report.environments) {
      const GridCell* cell = report.find(env, algorithm, k);
      out += ',';
      out += cell != nullptr ? format_fixed(cell->metrics.weighted_f, 4) : "n/a";
    }
    out += '\n';
  }
  return out;
}

std::string format_deltas_tsv(const ComparisonReport& report) {
  if (report.environments.size() != 2) {
    throw UsageError("feature deltas need exactly two environments");
  }
  const std::string& a = report.environments[0];
  const std::string& b = report.environments[1];
  std::string out = "feature\t" + a + "_malware\t" + a + "_benign\t" + b +
                    "_malware\t" + b + "_benign\tdelta\tpresence\n";
  for (const FeatureDelta& d : report.deltas) {
    const long long delta = static_cast<long long>(d.total_b()) -
                            static_cast<long long>(d.total_a());
    std::string presence = "both";
    if (d.total_a() == 0 && d.total_b() == 0) {
      presence = "neither";
    } else if (d.total_a() == 0) {
      presence = b + "_only";
    } else if (d.total_b() == 0) {
      presence = a + "_only";
    }
    out += d.feature + '\t' + std::to_string(d.malware_a) + '\t' +
           std::to_string(d.benign_a) + '\t' + std::to_string(d.malware_b) +
           '\t' + std::to_string(d.benign_b) + '\t' + std::to_string(delta) +
           '\t' + presence + '\n';
  }
  return out;
}

std::string format_accuracy_tsv(const ComparisonReport& report) {
  std::string out = "environment\talgorithm\tk\tsplit_accuracy\tcv_accuracy\n";
  for (const AccuracyRow& r : report.accuracy) {
    out += r.environment + '\t' + std::string(to_string(r.algorithm)) + '\t' +
           std::to_string(r.k) + '\t' + format_fixed(r.split_accuracy, 4) +
           '\t' + format_fixed(r.cv_accuracy, 4) + '\n';
  }
  return out;
}

}  // namespace droidbench
