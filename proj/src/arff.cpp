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
#include <cctype>

#include "droidbench/dataset.hpp"
#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

namespace {

bool is_plain_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::string_view(";/<>$_.-").find(c) != std::string_view::npos;
}

std::string quote_if_needed(std::string_view name) {
  const bool plain = !name.empty() && std::all_of(name.begin(), name.end(),
                                                  is_plain_char);
  if (plain) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

// Reads a possibly quoted name from the front of `rest` and advances it.
std::string take_name(std::string_view& rest, std::size_t line_no) {
  rest = trim(rest);
  if (rest.empty()) throw ArffSyntax(line_no, "missing name");
  std::string name;
  const char q = rest.front();
  if (q == '\'' || q == '"') {
    std::size_t i = 1;
    for (; i < rest.size() && rest[i] != q; ++i) {
      if (rest[i] == '\\' && i + 1 < rest.size()) ++i;
      name += rest[i];
    }
    if (i >= rest.size()) throw ArffSyntax(line_no, "unterminated quote");
    rest.remove_prefix(i + 1);
  } else {
    std::size_t i = 0;
    while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])) &&
           rest[i] != '{') {
      ++i;
    }
    name = std::string(rest.substr(0, i));
    rest.remove_prefix(i);
  }
  return name;
}

std::vector<std::string> parse_domain(std::string_view text,
                                      std::size_t line_no) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    return {};
  }
  std::vector<std::string> values;
  for (std::string& v : split(text.substr(1, text.size() - 2), ',')) {
    std::string_view t = trim(v);
    if (t.size() >= 2 && (t.front() == '\'' || t.front() == '"')) {
      std::string_view rest = t;
      values.push_back(take_name(rest, line_no));
    } else {
      values.emplace_back(t);
    }
  }
  return values;
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

std::string export_arff(const Dataset& dataset) {
  std::string out = "@relation " + quote_if_needed(dataset.tag()) + "\n";
  for (const std::string& name : dataset.vocabulary().names()) {
    out += "@attribute " + quote_if_needed(name) + " {0,1}\n";
  }
  out += "@attribute class {malware,benign}\n@data\n";
  for (const FeatureVector& row : dataset.rows()) {
    for (std::uint8_t b : row.bits) {
      out += static_cast<char>('0' + b);
      out += ',';
    }
    out += to_string(row.label);
    out += " % ";
    out += row.app_id;
    out += '\n';
  }
  return out;
}

Dataset import_arff(std::string_view text) {
  std::string relation;
  bool have_relation = false;
  bool in_data = false;
  struct Attribute {
    std::string name;
    std::size_t line;
    bool is_class;
  };
  std::vector<Attribute> attributes;
  std::vector<FeatureVector> rows;
  std::set<std::string> ids;
  std::size_t line_no = 0;

  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (line.front() != '@') throw ArffSyntax(line_no, "expected a declaration");
      const std::size_t sp = line.find_first_of(" \t");
      std::string_view keyword = line.substr(0, sp);
      std::string_view rest =
          sp == std::string_view::npos ? std::string_view{} : line.substr(sp);
      if (iequals(keyword, "@relation")) {
        if (have_relation) throw ArffSyntax(line_no, "second @relation");
        relation = take_name(rest, line_no);
        have_relation = true;
      } else if (iequals(keyword, "@attribute")) {
        if (!have_relation) throw ArffSyntax(line_no, "@attribute before @relation");
        std::string name = take_name(rest, line_no);
        const auto domain = parse_domain(rest, line_no);
        if (domain.empty()) {
          throw AttributeMismatch("line " + std::to_string(line_no) +
                                  ": attribute '" + name +
                                  "' is not nominal");
        }
        const bool is_class = same_set(domain, {"malware", "benign"});
        if (!is_class && !same_set(domain, {"0", "1"})) {
          throw AttributeMismatch("line " + std::to_string(line_no) +
                                  ": attribute '" + name +
                                  "' has a non-{0,1} domain");
        }
        if (is_class && !iequals(name, "class")) {
          throw AttributeMismatch("line " + std::to_string(line_no) +
                                  ": label domain on attribute '" + name + "'");
        }
        attributes.push_back({name, line_no, is_class});
      } else if (iequals(keyword, "@data")) {
        if (attributes.empty() || !attributes.back().is_class) {
          throw AttributeMismatch("line " + std::to_string(line_no) +
                                  ": last attribute must be class "
                                  "{malware,benign}");
        }
        for (std::size_t i = 0; i + 1 < attributes.size(); ++i) {
          if (attributes[i].is_class) {
            throw AttributeMismatch("line " + std::to_string(attributes[i].line) +
                                    ": class attribute must come last");
          }
        }
        in_data = true;
      } else {
        throw ArffSyntax(line_no, "unknown declaration " + std::string(keyword));
      }
      continue;
    }

    if (line.front() == '{') throw ArffSyntax(line_no, "sparse rows are not supported");
    std::string_view values_part = line;
    std::string app_id;
    if (const std::size_t pct = line.find('%'); pct != std::string_view::npos) {
      values_part = trim(line.substr(0, pct));
      app_id = std::string(trim(line.substr(pct + 1)));
    }
    const auto values = split(values_part, ',');
    if (values.size() != attributes.size()) {
      throw ArffSyntax(line_no, "row has " + std::to_string(values.size()) +
                                    " values, expected " +
                                    std::to_string(attributes.size()));
    }
    FeatureVector row;
    row.bits.reserve(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      std::string_view v = trim(values[i]);
      if (v == "0") {
        row.bits.push_back(0);
      } else if (v == "1") {
        row.bits.push_back(1);
      } else {
        throw ArffSyntax(line_no, "value '" + std::string(v) +
                                      "' for attribute " +
                                      attributes[i].name + " is not 0 or 1");
      }
    }
    std::string_view label = trim(values.back());
    if (label == "malware") {
      row.label = Label::kMalware;
    } else if (label == "benign") {
      row.label = Label::kBenign;
    } else {
      throw ArffSyntax(line_no, "unknown class '" + std::string(label) + "'");
    }
    if (app_id.empty()) app_id = "row-" + std::to_string(rows.size() + 1);
    if (!ids.insert(app_id).second) {
      throw ArffSyntax(line_no, "duplicate app id " + app_id);
    }
    row.app_id = std::move(app_id);
    rows.push_back(std::move(row));
  }
  if (!in_data) throw ArffSyntax(line_no, "missing @data section");

  std::vector<std::string> names;
  names.reserve(attributes.size() - 1);
  for (std::size_t i = 0; i + 1 < attributes.size(); ++i) {
    names.push_back(attributes[i].name);
  }
  try {
    return Dataset(Vocabulary(std::move(names)), std::move(rows),
                   std::move(relation));
  } catch (const InvalidDataset& e) {
    throw AttributeMismatch(e.what());
  }
}

}  // namespace droidbench
