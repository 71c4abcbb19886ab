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

#ifndef DROIDBENCH_LOG_INGEST_HPP
#define DROIDBENCH_LOG_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace droidbench {

struct LogTimestamp {
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  int millis = 0;

  bool operator==(const LogTimestamp&) const = default;
};

// One logcat line in the `threadtime` layout with single-space separators:
//
//   MM-DD HH:MM:SS.mmm PID TID L TAG: message
struct LogLine {
  LogTimestamp timestamp;
  std::uint32_t pid = 0;
  std::uint32_t tid = 0;
  char level = 'I';  // one of V D I W E F
  std::string tag;
  std::string message;

  bool operator==(const LogLine&) const = default;
};

// Throws MalformedLine with the byte offset of the first violation.
LogLine parse_log_line(std::string_view text);

// Non-throwing variant for bulk ingestion. On failure returns nullopt and, if
// `error_offset` is given, stores the violation offset there.
std::optional<LogLine> try_parse_log_line(std::string_view text,
                                          std::size_t* error_offset = nullptr);

// Inverse of parse_log_line for well-formed lines.
std::string format_log_line(const LogLine& line);

// Monitored API-call and intent signatures. Immutable once built; the union
// of both lists is duplicate-free and no entry is empty or holds whitespace.
class SignatureList {
 public:
  SignatureList() = default;
  // Throws DuplicateSignature / SignatureFileError (line 0) on bad input.
  SignatureList(std::vector<std::string> api, std::vector<std::string> intents);

  const std::vector<std::string>& api() const { return api_; }
  const std::vector<std::string>& intents() const { return intents_; }
  // API signatures first, then intents, each in file order.
  std::vector<std::string> all() const;
  std::size_t size() const { return api_.size() + intents_.size(); }
  bool contains(std::string_view signature) const;
  bool is_intent(std::string_view signature) const;

 private:
  std::vector<std::string> api_;
  std::vector<std::string> intents_;
  std::set<std::string, std::less<>> members_;
};

// Signature file: `[api]` and `[intent]` headers switch category, `#` starts
// a comment line, blank lines are skipped, everything else is one signature.
SignatureList parse_signatures(std::string_view text);
SignatureList load_signatures(const std::string& path);
std::string format_signatures(const SignatureList& signatures);

struct AppObservation {
  std::string app_id;
  std::set<std::string> observed;
  // Number of log lines whose message contains each observed signature.
  std::map<std::string, std::size_t> line_counts;
  std::size_t parsed_lines = 0;
  std::size_t malformed_lines = 0;
};

// A signature is observed when it is a substring of the message of any line
// that parses. Intent signatures match with or without the
// `android.intent.action.` prefix. Malformed lines are skipped and counted.
AppObservation extract_observations(std::string_view raw_log,
                                    const SignatureList& signatures,
                                    std::string app_id);

}  // namespace droidbench

#endif  // DROIDBENCH_LOG_INGEST_HPP
