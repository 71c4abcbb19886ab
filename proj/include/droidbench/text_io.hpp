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

#ifndef DROIDBENCH_TEXT_IO_HPP
#define DROIDBENCH_TEXT_IO_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace droidbench {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Splits on '\n'. A trailing newline does not produce an empty last element;
// a trailing '\r' on each line is dropped.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

std::string_view trim(std::string_view text);

// Shortest round-trip form is not what we want for stable files; these use
// fixed precision and the C locale regardless of the global locale.
std::string format_double(double value, int significant_digits = 17);
std::string format_fixed(double value, int decimals);
double parse_double(std::string_view text);

struct KeyValue {
  std::size_t line = 0;  // 1-based
  std::string key;
  std::string value;
};

// `key = value` lines; blank lines and lines starting with `#` are skipped.
// Whitespace around keys and values is dropped; the value may be empty.
// Throws ConfigError for a line without `=`, an empty key or a repeated key.
std::vector<KeyValue> parse_key_values(std::string_view text);

}  // namespace droidbench

#endif  // DROIDBENCH_TEXT_IO_HPP
