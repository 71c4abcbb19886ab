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

#include "droidbench/mock_device.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <utility>

#include "droidbench/error.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

double SteadyClock::now_s() const {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void SteadyClock::sleep_for(double seconds) {
  if (seconds > 0) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  }
}

MockDevice::MockDevice(MockScript script, Clock* clock)
    : script_(std::move(script)),
      clock_(clock),
      installed_(script_.installed),
      airplane_on_(script_.airplane_on) {}

void MockDevice::maybe_fail(const std::string& op) {
  auto it = script_.transient_failures.find(op);
  if (it != script_.transient_failures.end() && it->second > 0) {
    --it->second;
    calls_.push_back(op + " FAILED");
    throw DriverFailure("mock: injected failure in " + op);
  }
}

std::vector<std::string> MockDevice::list_third_party_packages() {
  maybe_fail("list_third_party_packages");
  calls_.push_back("list_third_party_packages");
  return {installed_.begin(), installed_.end()};
}

void MockDevice::uninstall_package(const std::string& package_id) {
  maybe_fail("uninstall_package");
  calls_.push_back("uninstall_package " + package_id);
  installed_.erase(package_id);
  if (package_id == current_app_) {
    current_app_.clear();
    current_crashed_ = false;
  }
}

void MockDevice::install_app(const AppSample& sample) {
  maybe_fail("install_app");
  calls_.push_back("install_app " + sample.id);
  if (clock_ != nullptr) {
    auto it = script_.install_seconds.find(sample.id);
    if (it != script_.install_seconds.end()) clock_->sleep_for(it->second);
  }
  installed_.insert(sample.id);
}

AppState MockDevice::launch_app(const std::string& package_id) {
  maybe_fail("launch_app");
  calls_.push_back("launch_app " + package_id);
  if (!installed_.count(package_id)) {
    throw DriverFailure("mock: launch of uninstalled package " + package_id);
  }
  current_app_ = package_id;
  current_crashed_ = false;
  if (script_.no_activity_set.count(package_id)) return AppState::kNoActivities;
  return AppState::kRunning;
}

AppState MockDevice::send_random_events(std::size_t count, std::uint64_t seed) {
  maybe_fail("send_random_events");
  calls_.push_back("send_random_events " + std::to_string(count) + " " +
                   std::to_string(seed));
  const std::size_t index = exercise_calls_++;
  if (script_.airplane_flips.count(index)) airplane_on_ = true;
  if (script_.crash_set.count(current_app_)) {
    current_crashed_ = true;
    return AppState::kCrashed;
  }
  return AppState::kRunning;
}

std::string MockDevice::read_log() {
  maybe_fail("read_log");
  calls_.push_back("read_log");
  if (current_app_.empty()) return {};
  auto it = script_.logs.find(current_app_);
  if (it == script_.logs.end()) return {};
  if (!current_crashed_) return it->second;
  // A crashed run only got through the first half of its log.
  const auto lines = split_lines(it->second);
  std::string partial;
  for (std::size_t i = 0; i < (lines.size() + 1) / 2; ++i) {
    partial.append(lines[i]);
    partial.push_back('\n');
  }
  return partial;
}

int MockDevice::battery_percent() {
  maybe_fail("battery_percent");
  calls_.push_back("battery_percent");
  const std::size_t i = battery_reads_++;
  if (script_.battery.empty()) return 100;
  return script_.battery[std::min(i, script_.battery.size() - 1)];
}

bool MockDevice::airplane_mode() {
  maybe_fail("airplane_mode");
  calls_.push_back("airplane_mode");
  return airplane_on_;
}

void MockDevice::set_airplane_mode(bool on) {
  maybe_fail("set_airplane_mode");
  calls_.push_back(std::string("set_airplane_mode ") + (on ? "on" : "off"));
  airplane_on_ = on;
}

void MockDevice::push_file(const std::string& device_path,
                           std::string_view bytes) {
  maybe_fail("push_file");
  calls_.push_back("push_file " + device_path);
  files_[device_path] = std::string(bytes);
}

void MockDevice::import_contacts() {
  maybe_fail("import_contacts");
  calls_.push_back("import_contacts");
  auto it = files_.find(std::string(kContactsDevicePath));
  if (it == files_.end()) {
    throw DriverFailure("mock: no contacts file pushed");
  }
  std::size_t cards = 0;
  for (std::string_view line : split_lines(it->second)) {
    if (line == "BEGIN:VCARD") ++cards;
  }
  contacts_imported_ = cards;
}

void MockDevice::dial_number(const std::string& number) {
  maybe_fail("dial_number");
  calls_.push_back("dial_number " + number);
}

void MockDevice::send_sms(const std::string& number, const std::string& text) {
  maybe_fail("send_sms");
  calls_.push_back("send_sms " + number + " " + text);
}

}  // namespace droidbench
