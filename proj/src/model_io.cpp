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

#include <charconv>
#include <string>
#include <vector>

#include "droidbench/classifiers.hpp"
#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

// Layout of a serialized model, one record per line, fields separated by
// single spaces:
//
//   #model <kind> v1          kind: nb tree forest logistic svm mlp
//   features <d>
//   config <key> <value>      one line per TrainConfig field
//   ...kind-specific records...
//   end
//
// nb:        priors <p_mal> <p_ben>; p_one 0 <d values>; p_one 1 <d values>
// tree:      nodes <n>, then n lines `node <feature> <child0> <child1>
//            <count_mal> <count_ben>` (feature -1 marks a leaf)
// forest:    trees <t>, then per tree `tree <seed> <n>` plus n node lines
// logistic,
// svm:       bias <b>; weights <d values>
// mlp:       hidden <h>; w1 <j> <d values> for each hidden unit j;
//            b1 <h values>; w2 <h values>; b2 <value>

namespace droidbench {

namespace {

std::string_view kind_name(const ModelBody& body) {
  static constexpr std::string_view kNames[] = {"nb",       "tree", "forest",
                                                "logistic", "svm",  "mlp"};
  return kNames[body.index()];
}

void append_values(std::string& out, std::span<const double> values) {
  for (double v : values) {
    out += ' ';
    out += format_double(v);
  }
}

void append_nodes(std::string& out, const TreeModel& tree) {
  for (const TreeNode& n : tree.nodes) {
    out += "node " + std::to_string(n.feature) + ' ' +
           std::to_string(n.child[0]) + ' ' + std::to_string(n.child[1]) +
           ' ' + std::to_string(n.counts[0]) + ' ' +
           std::to_string(n.counts[1]) + '\n';
  }
}

struct ConfigField {
  std::string_view key;
  enum { kUint, kSize, kDouble, kBool } type;
  void* (*slot)(TrainConfig&);
};

#define FIELD(name, type) \
  ConfigField { #name, ConfigField::type, [](TrainConfig& c) -> void* { return &c.name; } }

const ConfigField kConfigFields[] = {
    FIELD(seed, kUint),
    FIELD(nb_alpha, kDouble),
    FIELD(tree_min_leaf, kSize),
    FIELD(forest_trees, kSize),
    FIELD(forest_features, kSize),
    FIELD(forest_bootstrap, kBool),
    FIELD(forest_min_leaf, kSize),
    FIELD(logistic_epochs, kSize),
    FIELD(logistic_rate, kDouble),
    FIELD(logistic_lambda, kDouble),
    FIELD(svm_epochs, kSize),
    FIELD(svm_c, kDouble),
    FIELD(mlp_hidden, kSize),
    FIELD(mlp_epochs, kSize),
    FIELD(mlp_rate, kDouble),
    FIELD(mlp_init_range, kDouble),
};

#undef FIELD

std::string config_value(const ConfigField& field, const TrainConfig& cfg) {
  auto& c = const_cast<TrainConfig&>(cfg);
  switch (field.type) {
    case ConfigField::kUint:
      return std::to_string(*static_cast<std::uint64_t*>(field.slot(c)));
    case ConfigField::kSize:
      return std::to_string(*static_cast<std::size_t*>(field.slot(c)));
    case ConfigField::kDouble:
      return format_double(*static_cast<double*>(field.slot(c)));
    case ConfigField::kBool:
      return *static_cast<bool*>(field.slot(c)) ? "1" : "0";
  }
  return {};
}

// Sequential reader over the record lines.
class Reader {
 public:
  explicit Reader(std::string_view text) {
    for (std::string_view line : split_lines(text)) {
      if (!trim(line).empty()) lines_.emplace_back(line);
    }
  }

  std::size_t line_number() const { return pos_; }

  std::vector<std::string> next(std::string_view keyword) {
    if (pos_ >= lines_.size()) fail("unexpected end of model, wanted '" +
                                    std::string(keyword) + "'");
    std::vector<std::string> fields = split(lines_[pos_++], ' ');
    if (fields.empty() || fields[0] != keyword) {
      fail("expected '" + std::string(keyword) + "'");
    }
    fields.erase(fields.begin());
    return fields;
  }

  bool peek(std::string_view keyword) const {
    return pos_ < lines_.size() &&
           lines_[pos_].compare(0, keyword.size(), keyword) == 0 &&
           (lines_[pos_].size() == keyword.size() ||
            lines_[pos_][keyword.size()] == ' ');
  }

  bool done() const { return pos_ >= lines_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ModelFormatError("model line " + std::to_string(pos_) + ": " + what);
  }

  template <typename T>
  T integer(const std::string& text) const {
    T value{};
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      fail("bad integer '" + text + "'");
    }
    return value;
  }

  double number(const std::string& text) const {
    try {
      return parse_double(text);
    } catch (const Error&) {
      fail("bad number '" + text + "'");
    }
  }

  std::vector<double> numbers(const std::vector<std::string>& fields,
                              std::size_t first, std::size_t count) const {
    if (fields.size() != first + count) {
      fail("expected " + std::to_string(count) + " values, got " +
           std::to_string(fields.size() - std::min(first, fields.size())));
    }
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = first; i < fields.size(); ++i) {
      out.push_back(number(fields[i]));
    }
    return out;
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

TreeModel read_nodes(Reader& in, std::size_t count) {
  TreeModel tree;
  tree.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto f = in.next("node");
    if (f.size() != 5) in.fail("node needs 5 fields");
    TreeNode n;
    n.feature = in.integer<std::int32_t>(f[0]);
    n.child = {in.integer<std::uint32_t>(f[1]), in.integer<std::uint32_t>(f[2])};
    n.counts = {in.integer<std::uint32_t>(f[3]), in.integer<std::uint32_t>(f[4])};
    tree.nodes.push_back(n);
  }
  if (tree.nodes.empty()) in.fail("tree without nodes");
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& n = tree.nodes[i];
    if (n.is_leaf()) {
      if (n.counts[0] + n.counts[1] == 0) in.fail("leaf without rows");
      continue;
    }
    // Children always come after their parent, which rules out cycles.
    if (n.feature < 0 || n.child[0] <= i || n.child[1] <= i ||
        n.child[0] >= count || n.child[1] >= count) {
      in.fail("bad node " + std::to_string(i));
    }
  }
  return tree;
}

std::size_t single_count(Reader& in, std::string_view keyword) {
  const auto f = in.next(keyword);
  if (f.size() != 1) in.fail(std::string(keyword) + " needs one value");
  return in.integer<std::size_t>(f[0]);
}

}  // namespace

std::string serialize_model(const Model& model) {
  const std::size_t d = model.feature_count();
  std::string out = "#model ";
  out += kind_name(model.body());
  out += " v1\nfeatures " + std::to_string(d) + '\n';
  for (const ConfigField& field : kConfigFields) {
    out += "config ";
    out += field.key;
    out += ' ' + config_value(field, model.config()) + '\n';
  }

  struct Writer {
    std::string& out;
    void operator()(const NaiveBayesModel& m) const {
      out += "priors";
      append_values(out, m.priors);
      out += '\n';
      for (int c = 0; c < 2; ++c) {
        out += "p_one " + std::to_string(c);
        append_values(out, m.p_one[c]);
        out += '\n';
      }
    }
    void operator()(const TreeModel& m) const {
      out += "nodes " + std::to_string(m.nodes.size()) + '\n';
      append_nodes(out, m);
    }
    void operator()(const ForestModel& m) const {
      out += "trees " + std::to_string(m.trees.size()) + '\n';
      for (std::size_t t = 0; t < m.trees.size(); ++t) {
        out += "tree " + std::to_string(m.tree_seeds[t]) + ' ' +
               std::to_string(m.trees[t].nodes.size()) + '\n';
        append_nodes(out, m.trees[t]);
      }
    }
    void linear(const std::vector<double>& w, double b) const {
      out += "bias " + format_double(b) + "\nweights";
      append_values(out, w);
      out += '\n';
    }
    void operator()(const LogisticModel& m) const { linear(m.weights, m.bias); }
    void operator()(const LinearSvmModel& m) const { linear(m.weights, m.bias); }
    void operator()(const MlpModel& m) const {
      const std::size_t d = m.hidden == 0 ? 0 : m.w1.size() / m.hidden;
      out += "hidden " + std::to_string(m.hidden) + '\n';
      for (std::size_t j = 0; j < m.hidden; ++j) {
        out += "w1 " + std::to_string(j);
        append_values(out, std::span(m.w1).subspan(j * d, d));
        out += '\n';
      }
      out += "b1";
      append_values(out, m.b1);
      out += "\nw2";
      append_values(out, m.w2);
      out += "\nb2 " + format_double(m.b2) + '\n';
    }
  };
  std::visit(Writer{out}, model.body());
  out += "end\n";
  return out;
}

Model parse_model(std::string_view text) {
  Reader in(text);
  const auto header = in.next("#model");
  if (header.size() != 2) in.fail("header must be '#model <kind> v1'");
  if (header[1] != "v1") in.fail("unsupported model version '" + header[1] + "'");
  const std::string& kind = header[0];
  const std::size_t d = single_count(in, "features");

  TrainConfig cfg;
  while (in.peek("config")) {
    const auto f = in.next("config");
    if (f.size() != 2) in.fail("config needs a key and a value");
    const ConfigField* field = nullptr;
    for (const ConfigField& candidate : kConfigFields) {
      if (candidate.key == f[0]) field = &candidate;
    }
    if (field == nullptr) in.fail("unknown config key '" + f[0] + "'");
    void* slot = field->slot(cfg);
    switch (field->type) {
      case ConfigField::kUint:
        *static_cast<std::uint64_t*>(slot) = in.integer<std::uint64_t>(f[1]);
        break;
      case ConfigField::kSize:
        *static_cast<std::size_t*>(slot) = in.integer<std::size_t>(f[1]);
        break;
      case ConfigField::kDouble:
        *static_cast<double*>(slot) = in.number(f[1]);
        break;
      case ConfigField::kBool:
        if (f[1] != "0" && f[1] != "1") in.fail("boolean must be 0 or 1");
        *static_cast<bool*>(slot) = f[1] == "1";
        break;
    }
  }

  ModelBody body;
  if (kind == "nb") {
    NaiveBayesModel m;
    const auto priors = in.numbers(in.next("priors"), 0, 2);
    m.priors = {priors[0], priors[1]};
    for (int c = 0; c < 2; ++c) {
      const auto f = in.next("p_one");
      if (f.empty() || f[0] != std::to_string(c)) in.fail("p_one out of order");
      m.p_one[c] = in.numbers(f, 1, d);
    }
    body = std::move(m);
  } else if (kind == "tree") {
    body = read_nodes(in, single_count(in, "nodes"));
  } else if (kind == "forest") {
    ForestModel m;
    const std::size_t trees = single_count(in, "trees");
    for (std::size_t t = 0; t < trees; ++t) {
      const auto f = in.next("tree");
      if (f.size() != 2) in.fail("tree needs a seed and a node count");
      m.tree_seeds.push_back(in.integer<std::uint64_t>(f[0]));
      m.trees.push_back(read_nodes(in, in.integer<std::size_t>(f[1])));
    }
    if (m.trees.empty()) in.fail("forest without trees");
    body = std::move(m);
  } else if (kind == "logistic" || kind == "svm") {
    const double bias = in.numbers(in.next("bias"), 0, 1)[0];
    std::vector<double> weights = in.numbers(in.next("weights"), 0, d);
    if (kind == "logistic") {
      body = LogisticModel{std::move(weights), bias};
    } else {
      body = LinearSvmModel{std::move(weights), bias};
    }
  } else if (kind == "mlp") {
    MlpModel m;
    m.hidden = single_count(in, "hidden");
    if (m.hidden == 0) in.fail("network without hidden units");
    for (std::size_t j = 0; j < m.hidden; ++j) {
      const auto f = in.next("w1");
      if (f.empty() || f[0] != std::to_string(j)) in.fail("w1 out of order");
      const auto row = in.numbers(f, 1, d);
      m.w1.insert(m.w1.end(), row.begin(), row.end());
    }
    m.b1 = in.numbers(in.next("b1"), 0, m.hidden);
    m.w2 = in.numbers(in.next("w2"), 0, m.hidden);
    m.b2 = in.numbers(in.next("b2"), 0, 1)[0];
    body = std::move(m);
  } else {
    in.fail("unknown model kind '" + kind + "'");
  }

  in.next("end");
  if (!in.done()) in.fail("content after 'end'");
  // Tree features must index into the row.
  auto check_tree = [&](const TreeModel& t) {
    for (const TreeNode& n : t.nodes) {
      if (!n.is_leaf() && static_cast<std::size_t>(n.feature) >= d) {
        in.fail("split feature out of range");
      }
    }
  };
  if (const auto* t = std::get_if<TreeModel>(&body)) check_tree(*t);
  if (const auto* f = std::get_if<ForestModel>(&body)) {
    for (const TreeModel& t : f->trees) check_tree(t);
  }
  return Model(std::move(body), d, cfg);
}

}  // namespace droidbench
