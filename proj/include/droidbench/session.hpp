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

#ifndef DROIDBENCH_SESSION_HPP
#define DROIDBENCH_SESSION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "droidbench/device.hpp"
#include "droidbench/error.hpp"
#include "droidbench/label.hpp"

namespace droidbench {

struct SessionConfig {
  double run_duration_s = 300.0;
  int battery_min_pct = 20;
  double battery_poll_s = 60.0;
  std::size_t event_count = 2000;
  std::uint64_t event_seed = 0;
  // `name,phone` per line; empty skips contact import.
  std::string contact_file;
  // Every regular file in here is pushed to the SD card; empty skips.
  std::string asset_dir;
  // Attempts per driver call before giving up with DeviceError.
  int driver_attempts = 3;
  // Caps the battery wait. Unset waits forever, as on a real bench.
  std::optional<int> battery_poll_budget;
  // Optional per-run stimulation hooks, off by default.
  std::optional<std::string> dial_number;
  std::optional<std::string> sms_number;
  std::string sms_text = "hello";

  // Throws UsageError on out-of-range values.
  void validate() const;
};

enum class RunStatus { kCompleted, kCrashed, kTimedOut, kNoActivities, kDeviceError };

std::string_view to_string(RunStatus status);
RunStatus parse_run_status(std::string_view text);

struct RunOutcome {
  std::string app_id;
  RunStatus status = RunStatus::kDeviceError;
  std::string raw_log;
  double elapsed_s = 0.0;
  // The exerciser left airplane mode on and the orchestrator reset it.
  bool airplane_reset = false;
  std::string detail;

  bool operator==(const RunOutcome&) const = default;
};

struct DevicePreparationReport {
  enum class State { kReady, kBatteryHold };
  State state = State::kReady;
  std::vector<std::string> uninstalled;
  std::size_t contacts_imported = 0;
  std::vector<std::string> assets_pushed;
  bool airplane_turned_off = false;
  int battery_polls = 0;
  int battery_pct = 0;
  // One human-readable line per step.
  std::vector<std::string> steps;
};

struct ClassStats {
  std::size_t attempted = 0;
  std::size_t succeeded = 0;
  double pct = 0.0;  // fraction in [0, 1]
};

struct SuccessStats {
  std::map<Label, ClassStats> per_class;
  std::size_t total_attempted = 0;
  std::size_t total_succeeded = 0;
  double total_pct = 0.0;
};

// Completed counts as success, every other status as failure. Throws Error on
// an empty collection or an outcome without a label.
SuccessStats success_stats(std::span<const RunOutcome> outcomes,
                           const LabelMap& labels);

// Tab-separated block: class, attempted, succeeded, fraction (4 dp), percent
// (1 dp). Rounding happens only here.
std::string format_success_stats(const SuccessStats& stats);

// `app_id status elapsed_s airplane_reset detail` with a header line.
std::string format_outcomes_tsv(std::span<const RunOutcome> outcomes);

struct Contact {
  std::string name;
  std::string phone;
};

std::vector<Contact> parse_contacts(std::string_view text);
std::string contacts_to_vcard(std::span<const Contact> contacts);

struct BatchResult {
  std::vector<RunOutcome> outcomes;
  SuccessStats stats;
};

// Thrown by batch_run when a driver failure cannot be recovered. Carries the
// outcomes recorded so far; the failing sample's outcome is the last one.
class BatchAborted : public DeviceError {
 public:
  BatchAborted(const std::string& what, std::vector<RunOutcome> partial)
      : DeviceError(what), partial_(std::move(partial)) {}
  const std::vector<RunOutcome>& partial() const { return partial_; }

 private:
  std::vector<RunOutcome> partial_;
};

// Drives analysis sessions on one device. Not thread-safe; one orchestrator
// per device, and it may be moved between threads while idle.
class SessionOrchestrator {
 public:
  SessionOrchestrator(DeviceDriver& driver, Clock& clock, SessionConfig config);

  // Uninstalls third-party packages, imports contacts, pushes assets, turns
  // airplane mode off and waits for the battery to reach battery_min_pct.
  DevicePreparationReport prepare_environment();

  // Install, launch, exercise, wait out the run, collect the log, uninstall.
  RunOutcome run_app(const AppSample& sample);

  // Prepares the device if that has not happened yet, then runs every sample
  // in order, waiting for the battery between apps.
  BatchResult batch_run(std::span<const AppSample> samples);

  // Line-oriented session log.
  const std::vector<std::string>& transcript() const { return transcript_; }

 private:
  template <typename Fn>
  auto call(const char* what, Fn&& fn);
  bool wait_for_battery(int& polls, int& level);
  void note(const std::string& line);

  DeviceDriver& driver_;
  Clock& clock_;
  SessionConfig config_;
  bool prepared_ = false;
  std::vector<std::string> transcript_;
};

}  // namespace droidbench

#endif  // DROIDBENCH_SESSION_HPP
