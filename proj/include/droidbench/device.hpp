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

#ifndef DROIDBENCH_DEVICE_HPP
#define DROIDBENCH_DEVICE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "droidbench/label.hpp"

namespace droidbench {

struct AppSample {
  std::string id;
  Label label = Label::kBenign;
  std::string apk_path;
};

// What the device reports about the app under test after launch or after a
// burst of exerciser events.
enum class AppState { kRunning, kCrashed, kNoActivities };

// Everything the orchestrator needs from a device. Implementations signal a
// failed call by throwing DriverFailure; the orchestrator retries.
//
// An adb-backed implementation maps one-to-one onto shell commands:
//
//   list_third_party_packages  adb shell pm list packages -3
//   uninstall_package(p)       adb uninstall p
//   install_app(s)             adb install -r s.apk_path
//   launch_app(p)              adb shell monkey -p p -c android.intent.category.LAUNCHER 1
//                              ("No activities found to run" => kNoActivities)
//   send_random_events(n, s)   adb shell monkey -p <current> -s s n
//                              ("// CRASH:" in the output => kCrashed)
//   read_log                   adb logcat -d   (cleared with logcat -c on install)
//   battery_percent            adb shell dumpsys battery  (the "level:" field)
//   airplane_mode              adb shell settings get global airplane_mode_on
//   set_airplane_mode(f)       settings put global airplane_mode_on <0|1>, then
//                              am broadcast -a android.intent.action.AIRPLANE_MODE
//   push_file(path, bytes)     adb push <temp file> path
//   import_contacts            am start -a android.intent.action.VIEW
//                                -d file:///sdcard/contacts.vcf -t text/x-vcard
//   dial_number(n)             am start -a android.intent.action.CALL -d tel:n
//   send_sms(n, text)          am start -a android.intent.action.SENDTO -d sms:n
//                                --es sms_body text --ez exit_on_sent true
//
// Only the in-memory MockDevice ships with the library.
class DeviceDriver {
 public:
  virtual ~DeviceDriver() = default;

  virtual std::vector<std::string> list_third_party_packages() = 0;
  virtual void uninstall_package(const std::string& package_id) = 0;
  virtual void install_app(const AppSample& sample) = 0;
  virtual AppState launch_app(const std::string& package_id) = 0;
  virtual AppState send_random_events(std::size_t count,
                                      std::uint64_t seed) = 0;
  virtual std::string read_log() = 0;
  virtual int battery_percent() = 0;
  virtual bool airplane_mode() = 0;
  virtual void set_airplane_mode(bool on) = 0;
  virtual void push_file(const std::string& device_path,
                         std::string_view bytes) = 0;
  // Imports the vCard previously pushed to kContactsDevicePath.
  virtual void import_contacts() = 0;
  virtual void dial_number(const std::string& number) = 0;
  virtual void send_sms(const std::string& number, const std::string& text) = 0;
};

inline constexpr std::string_view kContactsDevicePath = "/sdcard/contacts.vcf";
inline constexpr std::string_view kAssetsDeviceDir = "/sdcard/droidbench/";

// Time source for the orchestrator. The mock device runs on a VirtualClock so
// a 300 s run costs nothing in tests.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now_s() const = 0;
  virtual void sleep_for(double seconds) = 0;
};

class VirtualClock : public Clock {
 public:
  double now_s() const override { return now_; }
  void sleep_for(double seconds) override { now_ += seconds; }

 private:
  double now_ = 0.0;
};

class SteadyClock : public Clock {
 public:
  double now_s() const override;
  void sleep_for(double seconds) override;
};

}  // namespace droidbench

#endif  // DROIDBENCH_DEVICE_HPP
