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

#ifndef DROIDBENCH_MOCK_DEVICE_HPP
#define DROIDBENCH_MOCK_DEVICE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "droidbench/device.hpp"

namespace droidbench {

// Scripted behaviour of a MockDevice.
struct MockScript {
  // One value is consumed per battery_percent() call; the last one repeats.
  // Empty means a permanently full battery.
  std::vector<int> battery;
  // Log produced by a full run of each app. Apps without an entry log nothing.
  std::map<std::string, std::string> logs;
  // Apps that crash under the exerciser; their log is cut to the first half.
  std::set<std::string> crash_set;
  // Apps without a launchable activity.
  std::set<std::string> no_activity_set;
  // 0-based indices of send_random_events() calls after which the exerciser
  // has switched airplane mode on.
  std::set<std::size_t> airplane_flips;
  // Third-party packages present before the session starts.
  std::set<std::string> installed;
  bool airplane_on = false;
  // Simulated install duration per app, charged to the clock.
  std::map<std::string, double> install_seconds;
  // Number of times each named operation fails before succeeding.
  std::map<std::string, int> transient_failures;
};

// Deterministic in-memory device. Every call is recorded in calls() so tests
// can assert on the exact interaction sequence.
class MockDevice : public DeviceDriver {
 public:
  // `clock`, when given, is advanced by install_seconds on install.
  explicit MockDevice(MockScript script, Clock* clock = nullptr);

  std::vector<std::string> list_third_party_packages() override;
  void uninstall_package(const std::string& package_id) override;
  void install_app(const AppSample& sample) override;
  AppState launch_app(const std::string& package_id) override;
  AppState send_random_events(std::size_t count, std::uint64_t seed) override;
  std::string read_log() override;
  int battery_percent() override;
  bool airplane_mode() override;
  void set_airplane_mode(bool on) override;
  void push_file(const std::string& device_path,
                 std::string_view bytes) override;
  void import_contacts() override;
  void dial_number(const std::string& number) override;
  void send_sms(const std::string& number, const std::string& text) override;

  const std::set<std::string>& installed() const { return installed_; }
  const std::vector<std::string>& calls() const { return calls_; }
  const std::map<std::string, std::string>& files() const { return files_; }
  std::size_t contacts_imported() const { return contacts_imported_; }
  std::size_t battery_reads() const { return battery_reads_; }

 private:
  void maybe_fail(const std::string& op);

  MockScript script_;
  Clock* clock_;
  std::set<std::string> installed_;
  bool airplane_on_;
  std::string current_app_;
  bool current_crashed_ = false;
  std::size_t battery_reads_ = 0;
  std::size_t exercise_calls_ = 0;
  std::size_t contacts_imported_ = 0;
  std::map<std::string, std::string> files_;
  std::vector<std::string> calls_;
};

}  // namespace droidbench

#endif  // DROIDBENCH_MOCK_DEVICE_HPP
