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

#include "droidbench/log_ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

namespace {

constexpr std::string_view kIntentPrefix = "android.intent.action.";
constexpr std::string_view kLevels = "VDIWEF";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t error = std::string_view::npos;
  const char* reason = nullptr;

  bool fail(std::size_t at, const char* why) {
    if (error == std::string_view::npos) {
      error = at;
      reason = why;
    }
    return false;
  }

  bool literal(char c) {
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return fail(pos, "unexpected character");
  }

  // Exactly `width` digits, value within [lo, hi].
  bool fixed(int width, int lo, int hi, int& out) {
    const std::size_t start = pos;
    int value = 0;
    for (int i = 0; i < width; ++i) {
      if (pos >= text.size() || !is_digit(text[pos])) {
        return fail(pos, "expected digit");
      }
      value = value * 10 + (text[pos] - '0');
      ++pos;
    }
    if (value < lo || value > hi) return fail(start, "field out of range");
    out = value;
    return true;
  }

  // Canonical unsigned decimal: no sign, no leading zeros, fits in 32 bits.
  bool number(std::uint32_t& out) {
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < text.size() && is_digit(text[pos])) {
      value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (value > 0xffffffffULL) return fail(start, "id out of range");
      ++pos;
    }
    if (pos == start) return fail(start, "expected number");
    if (text[start] == '0' && pos - start > 1) {
      return fail(start, "leading zero");
    }
    out = static_cast<std::uint32_t>(value);
    return true;
  }
};

}  // namespace

std::optional<LogLine> try_parse_log_line(std::string_view text,
                                          std::size_t* error_offset) {
  Cursor c{text};
  LogLine line;
  LogTimestamp& ts = line.timestamp;
  bool ok = c.fixed(2, 1, 12, ts.month) && c.literal('-') &&
            c.fixed(2, 1, 31, ts.day) && c.literal(' ') &&
            c.fixed(2, 0, 23, ts.hour) && c.literal(':') &&
            c.fixed(2, 0, 59, ts.minute) && c.literal(':') &&
            c.fixed(2, 0, 59, ts.second) && c.literal('.') &&
            c.fixed(3, 0, 999, ts.millis) && c.literal(' ') &&
            c.number(line.pid) && c.literal(' ') && c.number(line.tid) &&
            c.literal(' ');
  if (ok) {
    if (c.pos < text.size() &&
        kLevels.find(text[c.pos]) != std::string_view::npos) {
      line.level = text[c.pos++];
      ok = c.literal(' ');
    } else {
      ok = c.fail(c.pos, "expected log level");
    }
  }
  if (ok) {
    const std::size_t tag_start = c.pos;
    while (c.pos < text.size() && text[c.pos] != ':' && text[c.pos] != ' ' &&
           text[c.pos] != '\t') {
      ++c.pos;
    }
    if (c.pos == tag_start) {
      ok = c.fail(tag_start, "empty tag");
    } else {
      line.tag = std::string(text.substr(tag_start, c.pos - tag_start));
      ok = c.literal(':') && c.literal(' ');
    }
  }
  if (!ok) {
    if (error_offset != nullptr) *error_offset = c.error;
    return std::nullopt;
  }
  line.message = std::string(text.substr(c.pos));
  return line;
}

LogLine parse_log_line(std::string_view text) {
  std::size_t offset = 0;
  auto line = try_parse_log_line(text, &offset);
  if (!line) throw MalformedLine(offset, "does not match logcat grammar");
  return *std::move(line);
}

std::string format_log_line(const LogLine& line) {
  char head[64];
  const auto& t = line.timestamp;
  std::snprintf(head, sizeof(head), "%02d-%02d %02d:%02d:%02d.%03d %u %u %c ",
                t.month, t.day, t.hour, t.minute, t.second, t.millis, line.pid,
                line.tid, line.level);
  std::string out(head);
  out += line.tag;
  out += ": ";
  out += line.message;
  return out;
}

SignatureList::SignatureList(std::vector<std::string> api,
                             std::vector<std::string> intents)
    : api_(std::move(api)), intents_(std::move(intents)) {
  for (const auto* list : {&api_, &intents_}) {
    for (const std::string& s : *list) {
      if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos) {
        throw SignatureFileError(0, "invalid signature '" + s + "'");
      }
      if (!members_.insert(s).second) throw DuplicateSignature(0, s);
    }
  }
}

std::vector<std::string> SignatureList::all() const {
  std::vector<std::string> out = api_;
  out.insert(out.end(), intents_.begin(), intents_.end());
  return out;
}

bool SignatureList::contains(std::string_view signature) const {
  return members_.find(signature) != members_.end();
}

bool SignatureList::is_intent(std::string_view signature) const {
  return std::find(intents_.begin(), intents_.end(), signature) !=
         intents_.end();
}

SignatureList parse_signatures(std::string_view text) {
  enum class Section { kNone, kApi, kIntent } section = Section::kNone;
  std::vector<std::string> api;
  std::vector<std::string> intents;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line == "[api]") {
        section = Section::kApi;
      } else if (line == "[intent]") {
        section = Section::kIntent;
      } else {
        throw SignatureFileError(line_no,
                                 "unknown section " + std::string(line));
      }
      continue;
    }
    if (section == Section::kNone) throw MissingSectionHeader(line_no);
    if (line.find_first_of(" \t") != std::string_view::npos) {
      throw SignatureFileError(line_no, "whitespace inside signature '" +
                                            std::string(line) + "'");
    }
    std::string sig(line);
    if (!seen.insert(sig).second) throw DuplicateSignature(line_no, sig);
    (section == Section::kApi ? api : intents).push_back(std::move(sig));
  }
  return SignatureList(std::move(api), std::move(intents));
}

SignatureList load_signatures(const std::string& path) {
  return parse_signatures(read_file(path));
}

std::string format_signatures(const SignatureList& signatures) {
  std::string out = "[api]\n";
  for (const auto& s : signatures.api()) out += s + "\n";
  out += "[intent]\n";
  for (const auto& s : signatures.intents()) out += s + "\n";
  return out;
}

AppObservation extract_observations(std::string_view raw_log,
                                    const SignatureList& signatures,
                                    std::string app_id) {
  struct Needle {
    const std::string* signature;
    std::string_view pattern;
  };
  std::vector<Needle> needles;
  for (const auto& s : signatures.api()) needles.push_back({&s, s});
  for (const auto& s : signatures.intents()) {
    std::string_view pattern = s;
    if (pattern.substr(0, kIntentPrefix.size()) == kIntentPrefix &&
        pattern.size() > kIntentPrefix.size()) {
      pattern.remove_prefix(kIntentPrefix.size());
    }
    needles.push_back({&s, pattern});
  }

  AppObservation obs;
  obs.app_id = std::move(app_id);
  for (std::string_view text : split_lines(raw_log)) {
    auto line = try_parse_log_line(text);
    if (!line) {
      ++obs.malformed_lines;
      continue;
    }
    ++obs.parsed_lines;
    for (const Needle& n : needles) {
      if (line->message.find(n.pattern) != std::string::npos) {
        ++obs.line_counts[*n.signature];
        obs.observed.insert(*n.signature);
      }
    }
  }
  return obs;
}

}  // namespace droidbench
