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
#include <random>

#include "droidbench/error.hpp"
#include "droidbench/log_ingest.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {
namespace {

const SignatureList& sample_signatures() {
  static const SignatureList list(
      {"Ljava/util/Timer;->schedule", "Landroid/telephony/SmsManager;->sendTextMessage",
       "Ljava/lang/Runtime;->exec"},
      {"android.intent.action.BOOT_COMPLETED", "SMS_RECEIVED"});
  return list;
}

TEST(ParseLogLine, ReadsEveryField) {
  const LogLine line =
      parse_log_line("01-02 03:04:05.678 100 200 I ApiMon: hit Ljava/util/Timer;->schedule");
  EXPECT_EQ(line.timestamp, (LogTimestamp{1, 2, 3, 4, 5, 678}));
  EXPECT_EQ(line.pid, 100u);
  EXPECT_EQ(line.tid, 200u);
  EXPECT_EQ(line.level, 'I');
  EXPECT_EQ(line.tag, "ApiMon");
  EXPECT_NE(line.message.find("Ljava/util/Timer;->schedule"), std::string::npos);
}

TEST(ParseLogLine, EmptyLineIsMalformed) {
  EXPECT_THROW(parse_log_line(""), MalformedLine);
}

TEST(ParseLogLine, MissingLevelReportsItsOffset) {
  try {
    parse_log_line("01-02 03:04:05.678 100 200 ApiMon: hit");
    FAIL();
  } catch (const MalformedLine& e) {
    EXPECT_EQ(e.offset(), 27u);
  }
}

TEST(ParseLogLine, RejectsOutOfRangeFields) {
  EXPECT_THROW(parse_log_line("13-02 03:04:05.678 1 2 I T: m"), MalformedLine);
  EXPECT_THROW(parse_log_line("01-02 03:04:05.678 01 2 I T: m"), MalformedLine);
  EXPECT_THROW(parse_log_line("01-02 03:04:05.678 1 2 X T: m"), MalformedLine);
  EXPECT_THROW(parse_log_line("--------- beginning of main"), MalformedLine);
}

TEST(ParseLogLine, FormatRoundTrips) {
  for (const char* text :
       {"10-17 09:00:00.001 4242 4243 D IntentMonitor: received BOOT_COMPLETED",
        "12-31 23:59:59.999 0 0 F T: ", "01-01 00:00:00.000 7 7 W a.b: x: y"}) {
    EXPECT_EQ(format_log_line(parse_log_line(text)), text);
  }
}

TEST(Extract, SingleApiLine) {
  const AppObservation obs = extract_observations(
      "01-02 03:04:05.678 100 200 I ApiMon: hit Ljava/util/Timer;->schedule\n",
      sample_signatures(), "app");
  EXPECT_EQ(obs.observed, std::set<std::string>{"Ljava/util/Timer;->schedule"});
  EXPECT_EQ(obs.line_counts.at("Ljava/util/Timer;->schedule"), 1u);
}

TEST(Extract, EmptyLogObservesNothing) {
  const AppObservation obs = extract_observations("", sample_signatures(), "app");
  EXPECT_TRUE(obs.observed.empty());
  EXPECT_EQ(obs.parsed_lines, 0u);
}

TEST(Extract, CountsRepeatsAndSkipsMalformedLines) {
  const std::string log =
      "--------- beginning of main\n"
      "01-01 00:00:00.000 1 1 I A: Ljava/lang/Runtime;->exec(\"sh\")\n"
      "01-01 00:00:00.100 1 1 I A: call Ljava/util/Timer;->schedule\n"
      "garbage Landroid/telephony/SmsManager;->sendTextMessage\n"
      "01-01 00:00:00.200 1 1 D B: received android.intent.action.BOOT_COMPLETED\n"
      "01-01 00:00:00.300 1 1 I A: again Ljava/lang/Runtime;->exec\n";
  const AppObservation obs = extract_observations(log, sample_signatures(), "x");
  EXPECT_EQ(obs.observed.size(), 3u);
  EXPECT_EQ(obs.line_counts.at("Ljava/lang/Runtime;->exec"), 2u);
  EXPECT_EQ(obs.malformed_lines, 2u);
  EXPECT_EQ(obs.parsed_lines, 4u);
  EXPECT_FALSE(obs.observed.count("Landroid/telephony/SmsManager;->sendTextMessage"));
}

TEST(Extract, IntentsMatchWithOrWithoutPrefix) {
  const std::string log =
      "01-01 00:00:00.000 1 1 D B: got BOOT_COMPLETED\n"
      "01-01 00:00:00.000 1 1 D B: got android.intent.action.SMS_RECEIVED\n";
  const AppObservation obs = extract_observations(log, sample_signatures(), "x");
  EXPECT_TRUE(obs.observed.count("android.intent.action.BOOT_COMPLETED"));
  EXPECT_TRUE(obs.observed.count("SMS_RECEIVED"));
}

TEST(Extract, OrderInsensitiveAndMonotone) {
  std::vector<std::string> lines{
      "01-01 00:00:00.000 1 1 I A: Ljava/lang/Runtime;->exec",
      "01-01 00:00:00.000 1 1 I A: nothing here",
      "01-01 00:00:00.000 1 1 D B: BOOT_COMPLETED",
      "not a log line",
      "01-01 00:00:00.000 1 1 I A: Ljava/util/Timer;->schedule"};
  auto observe = [](const std::vector<std::string>& ls) {
    std::string text;
    for (const auto& l : ls) text += l + "\n";
    return extract_observations(text, sample_signatures(), "x").observed;
  };
  const auto reference = observe(lines);
  std::mt19937 gen(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(lines.begin(), lines.end(), gen);
    EXPECT_EQ(observe(lines), reference);
  }
  std::set<std::string> grown = reference;
  for (std::size_t n = 0; n <= lines.size(); ++n) {
    const auto prefix = observe({lines.begin(), lines.begin() + static_cast<long>(n)});
    EXPECT_TRUE(std::includes(reference.begin(), reference.end(), prefix.begin(),
                              prefix.end()));
  }
}

TEST(Signatures, SectionsSwitchCategory) {
  const SignatureList list =
      parse_signatures("# monitored\n[api]\nLjava/util/Timer;->schedule\n\n[intent]\nBOOT_COMPLETED\n");
  EXPECT_EQ(list.api().size(), 1u);
  EXPECT_EQ(list.intents(), std::vector<std::string>{"BOOT_COMPLETED"});
  EXPECT_TRUE(list.is_intent("BOOT_COMPLETED"));
  EXPECT_EQ(parse_signatures(format_signatures(list)).all(), list.all());
}

TEST(Signatures, DuplicateNamesTheSignatureAndLine) {
  try {
    parse_signatures("[intent]\nBOOT_COMPLETED\nBOOT_COMPLETED\n");
    FAIL();
  } catch (const DuplicateSignature& e) {
    EXPECT_EQ(e.signature(), "BOOT_COMPLETED");
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Signatures, EntryBeforeHeaderIsRejected) {
  EXPECT_THROW(parse_signatures("BOOT_COMPLETED\n"), MissingSectionHeader);
}

TEST(Signatures, WhitespaceAndUnknownSections) {
  EXPECT_THROW(parse_signatures("[api]\nfoo bar\n"), SignatureFileError);
  EXPECT_THROW(parse_signatures("[permissions]\nfoo\n"), SignatureFileError);
  EXPECT_THROW(SignatureList({"a"}, {"a"}), DuplicateSignature);
}

TEST(Signatures, FixtureHoldsTheFullVocabulary) {
  const SignatureList list =
      load_signatures(std::string(DROIDBENCH_TEST_DATA) + "/signatures_178.txt");
  EXPECT_EQ(list.size(), 178u);
}

}  // namespace
}  // namespace droidbench
