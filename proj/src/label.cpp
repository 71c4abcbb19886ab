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

#include "droidbench/label.hpp"

#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

Label parse_label(std::string_view text) {
  if (text == "malware") return Label::kMalware;
  if (text == "benign") return Label::kBenign;
  throw Error("unknown label '" + std::string(text) + "'");
}

LabelMap parse_labels_csv(std::string_view text) {
  LabelMap labels;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line_no == 1 && line == "app_id,label") continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw LineError(line_no, "expected app_id,label");
    }
    std::string id(trim(line.substr(0, comma)));
    std::string_view label_text = trim(line.substr(comma + 1));
    if (id.empty()) throw LineError(line_no, "empty app id");
    Label label;
    try {
      label = parse_label(label_text);
    } catch (const Error& e) {
      throw LineError(line_no, e.what());
    }
    if (!labels.emplace(id, label).second) {
      throw LineError(line_no, "duplicate app id '" + id + "'");
    }
  }
  return labels;
}

LabelMap load_labels(const std::string& path) {
  return parse_labels_csv(read_file(path));
}

std::string format_labels_csv(const LabelMap& labels) {
  std::string out = "app_id,label\n";
  for (const auto& [id, label] : labels) {
    out += id;
    out += ',';
    out += to_string(label);
    out += '\n';
  }
  return out;
}

}  // namespace droidbench
