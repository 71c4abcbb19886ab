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

#ifndef DROIDBENCH_LABEL_HPP
#define DROIDBENCH_LABEL_HPP

#include <map>
#include <string>
#include <string_view>

namespace droidbench {

// Malware is the positive class everywhere (metrics, scores, ARFF order).
enum class Label { kMalware, kBenign };

inline constexpr Label kAllLabels[] = {Label::kMalware, Label::kBenign};

inline std::string_view to_string(Label label) {
  return label == Label::kMalware ? "malware" : "benign";
}

// Throws droidbench::Error on anything but "malware" / "benign".
Label parse_label(std::string_view text);

using LabelMap = std::map<std::string, Label>;

// Reads a CSV of `app_id,label` rows. An optional `app_id,label` header line
// is skipped; blank lines are ignored.
LabelMap parse_labels_csv(std::string_view text);
LabelMap load_labels(const std::string& path);
std::string format_labels_csv(const LabelMap& labels);

}  // namespace droidbench

#endif  // DROIDBENCH_LABEL_HPP
