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

#include "droidbench/session.hpp"

#include <algorithm>
#include <filesystem>
#include <utility>

#include "droidbench/random.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

void SessionConfig::validate() const {
  if (!(run_duration_s > 0)) throw UsageError("run duration must be > 0");
  if (battery_min_pct < 0 || battery_min_pct > 100) {
    throw UsageError("battery threshold must be within 0..100");
  }
  if (!(battery_poll_s > 0)) throw UsageError("battery poll interval must be > 0");
  if (driver_attempts < 1) throw UsageError("driver attempts must be >= 1");
  if (battery_poll_budget && *battery_poll_budget < 0) {
    throw UsageError("battery poll budget must be >= 0");
  }
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kCrashed:
      return "crashed";
    case RunStatus::kTimedOut:
      return "timed_out";
    case RunStatus::kNoActivities:
      return "no_activities";
    case RunStatus::kDeviceError:
      return "device_error";
  }
  return "device_error";
}

RunStatus parse_run_status(std::string_view text) {
  for (RunStatus s : {RunStatus::kCompleted, RunStatus::kCrashed,
                      RunStatus::kTimedOut, RunStatus::kNoActivities,
                      RunStatus::kDeviceError}) {
    if (to_string(s) == text) return s;
  }
  throw Error("unknown run status '" + std::string(text) + "'");
}

SuccessStats success_stats(std::span<const RunOutcome> outcomes,
                           const LabelMap& labels) {
  if (outcomes.empty()) throw Error("success stats over no outcomes");
  SuccessStats stats;
  for (const RunOutcome& o : outcomes) {
    auto it = labels.find(o.app_id);
    if (it == labels.end()) throw UnlabeledApp("no label for " + o.app_id);
    ClassStats& c = stats.per_class[it->second];
    ++c.attempted;
    ++stats.total_attempted;
    if (o.status == RunStatus::kCompleted) {
      ++c.succeeded;
      ++stats.total_succeeded;
    }
  }
  for (auto& [label, c] : stats.per_class) {
    c.pct = static_cast<double>(c.succeeded) / static_cast<double>(c.attempted);
  }
  stats.total_pct = static_cast<double>(stats.total_succeeded) /
                    static_cast<double>(stats.total_attempted);
  return stats;
}

namespace {

std::string stats_row(std::string_view name, std::size_t attempted,
                      std::size_t succeeded, double pct) {
  std::string row(name);
  row += '\t' + std::to_string(attempted);
  row += '\t' + std::to_string(succeeded);
  row += '\t' + format_fixed(pct, 4);
  row += '\t' + format_fixed(pct * 100.0, 1) + "%\n";
  return row;
}

}  // namespace

std::string format_success_stats(const SuccessStats& stats) {
  std::string out = "class\tattempted\tsucceeded\tfraction\tpercent\n";
  for (Label label : kAllLabels) {
    auto it = stats.per_class.find(label);
    if (it == stats.per_class.end()) continue;
    out += stats_row(to_string(label), it->second.attempted,
                     it->second.succeeded, it->second.pct);
  }
  out += stats_row("total", stats.total_attempted, stats.total_succeeded,
                   stats.total_pct);
  return out;
}

std::string format_outcomes_tsv(std::span<const RunOutcome> outcomes) {
  std::string out = "app_id\tstatus\telapsed_s\tairplane_reset\tdetail\n";
  for (const RunOutcome& o : outcomes) {
    out += o.app_id;
    out += '\t';
    out += to_string(o.status);
    out += '\t' + format_fixed(o.elapsed_s, 1);
    out += o.airplane_reset ? "\t1\t" : "\t0\t";
    out += o.detail;
    out += '\n';
  }
  return out;
}

std::vector<Contact> parse_contacts(std::string_view text) {
  std::vector<Contact> contacts;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw LineError(line_no, "expected name,phone");
    }
    Contact c{std::string(trim(line.substr(0, comma))),
              std::string(trim(line.substr(comma + 1)))};
    if (c.name.empty() || c.phone.empty()) {
      throw LineError(line_no, "empty contact name or phone");
    }
    contacts.push_back(std::move(c));
  }
  return contacts;
}

std::string contacts_to_vcard(std::span<const Contact> contacts) {
  std::string out;
  for (const Contact& c : contacts) {
    out += "BEGIN:VCARD\nVERSION:3.0\nFN:" + c.name + "\nTEL;TYPE=CELL:" +
           c.phone + "\nEND:VCARD\n";
  }
  return out;
}

SessionOrchestrator::SessionOrchestrator(DeviceDriver& driver, Clock& clock,
                                         SessionConfig config)
    : driver_(driver), clock_(clock), config_(std::move(config)) {
  config_.validate();
}

void SessionOrchestrator::note(const std::string& line) {
  transcript_.push_back("[" + format_fixed(clock_.now_s(), 1) + "s] " + line);
}

template <typename Fn>
auto SessionOrchestrator::call(const char* what, Fn&& fn) {
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const DriverFailure& e) {
      note(std::string(what) + " attempt " + std::to_string(attempt) +
           " failed: " + e.what());
      if (attempt >= config_.driver_attempts) {
        throw DeviceError(std::string(what) + " failed after " +
                          std::to_string(attempt) + " attempts: " + e.what());
      }
    }
  }
}

bool SessionOrchestrator::wait_for_battery(int& polls, int& level) {
  level = call("battery_percent", [&] { return driver_.battery_percent(); });
  while (level < config_.battery_min_pct) {
    if (config_.battery_poll_budget && polls >= *config_.battery_poll_budget) {
      note("battery " + std::to_string(level) + "% below " +
           std::to_string(config_.battery_min_pct) + "%, holding");
      return false;
    }
    note("battery " + std::to_string(level) + "%, waiting " +
         format_fixed(config_.battery_poll_s, 0) + "s");
    clock_.sleep_for(config_.battery_poll_s);
    ++polls;
    level = call("battery_percent", [&] { return driver_.battery_percent(); });
  }
  return true;
}

DevicePreparationReport SessionOrchestrator::prepare_environment() {
  DevicePreparationReport report;

  const auto packages = call("list_third_party_packages",
                             [&] { return driver_.list_third_party_packages(); });
  for (const std::string& p : packages) {
    call("uninstall_package", [&] { driver_.uninstall_package(p); });
    report.uninstalled.push_back(p);
  }
  const auto remaining = call("list_third_party_packages",
                              [&] { return driver_.list_third_party_packages(); });
  if (!remaining.empty()) {
    throw DeviceError(std::to_string(remaining.size()) +
                      " third-party packages survived uninstall");
  }
  report.steps.push_back("uninstalled " + std::to_string(packages.size()) +
                         " third-party packages");

  if (!config_.contact_file.empty()) {
    const auto contacts = parse_contacts(read_file(config_.contact_file));
    const std::string vcard = contacts_to_vcard(contacts);
    call("push_file", [&] {
      driver_.push_file(std::string(kContactsDevicePath), vcard);
    });
    call("import_contacts", [&] { driver_.import_contacts(); });
    report.contacts_imported = contacts.size();
    report.steps.push_back("imported " + std::to_string(contacts.size()) +
                           " contacts");
  } else {
    report.steps.push_back("contacts skipped (none configured)");
  }

  if (!config_.asset_dir.empty()) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config_.asset_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      const std::string bytes = read_file(f);
      const std::string dest =
          std::string(kAssetsDeviceDir) + f.filename().string();
      call("push_file", [&] { driver_.push_file(dest, bytes); });
      report.assets_pushed.push_back(dest);
    }
    report.steps.push_back("pushed " + std::to_string(files.size()) +
                           " asset files");
  } else {
    report.steps.push_back("assets skipped (none configured)");
  }

  if (call("airplane_mode", [&] { return driver_.airplane_mode(); })) {
    call("set_airplane_mode", [&] { driver_.set_airplane_mode(false); });
    if (call("airplane_mode", [&] { return driver_.airplane_mode(); })) {
      throw DeviceError("airplane mode stuck on");
    }
    report.airplane_turned_off = true;
    report.steps.push_back("airplane mode turned off");
  } else {
    report.steps.push_back("airplane mode already off");
  }

  if (wait_for_battery(report.battery_polls, report.battery_pct)) {
    report.steps.push_back("battery " + std::to_string(report.battery_pct) +
                           "% after " + std::to_string(report.battery_polls) +
                           " polls");
  } else {
    report.state = DevicePreparationReport::State::kBatteryHold;
    report.steps.push_back("battery hold at " +
                           std::to_string(report.battery_pct) + "%");
  }

  for (const std::string& s : report.steps) note("prepare: " + s);
  prepared_ = report.state == DevicePreparationReport::State::kReady;
  return report;
}

namespace {

// Fills `out` as far as it gets; rethrows DeviceError after recording it.
class RunGuard {
 public:
  RunGuard(RunOutcome& out, Clock& clock, double start)
      : out_(out), clock_(clock), start_(start) {}
  void finish(RunStatus status, std::string detail = {}) {
    out_.status = status;
    out_.detail = std::move(detail);
    out_.elapsed_s = clock_.now_s() - start_;
  }

 private:
  RunOutcome& out_;
  Clock& clock_;
  double start_;
};

}  // namespace

RunOutcome SessionOrchestrator::run_app(const AppSample& sample) {
  RunOutcome out;
  out.app_id = sample.id;
  const double start = clock_.now_s();
  const double limit = 2.0 * config_.run_duration_s;
  RunGuard guard(out, clock_, start);
  bool installed = false;
  try {
    call("install_app", [&] { driver_.install_app(sample); });
    installed = true;
    if (clock_.now_s() - start > limit) {
      guard.finish(RunStatus::kTimedOut, "install exceeded time limit");
    } else {
      const AppState launched =
          call("launch_app", [&] { return driver_.launch_app(sample.id); });
      const double launched_at = clock_.now_s();
      if (launched == AppState::kNoActivities) {
        guard.finish(RunStatus::kNoActivities, "no launchable activity");
      } else if (launched == AppState::kCrashed) {
        guard.finish(RunStatus::kCrashed, "crashed on launch");
      } else {
        if (config_.dial_number) {
          call("dial_number", [&] { driver_.dial_number(*config_.dial_number); });
        }
        if (config_.sms_number) {
          call("send_sms", [&] {
            driver_.send_sms(*config_.sms_number, config_.sms_text);
          });
        }
        const std::uint64_t seed =
            derive_seed(config_.event_seed, hash_string(sample.id));
        const AppState exercised = call("send_random_events", [&] {
          return driver_.send_random_events(config_.event_count, seed);
        });
        if (call("airplane_mode", [&] { return driver_.airplane_mode(); })) {
          call("set_airplane_mode", [&] { driver_.set_airplane_mode(false); });
          out.airplane_reset = true;
          note(sample.id + ": exerciser enabled airplane mode, turned it off");
        }
        if (exercised == AppState::kCrashed) {
          guard.finish(RunStatus::kCrashed, "crashed under exerciser");
        } else {
          const double spent = clock_.now_s() - launched_at;
          clock_.sleep_for(std::max(0.0, config_.run_duration_s - spent));
          if (clock_.now_s() - start > limit) {
            guard.finish(RunStatus::kTimedOut, "run exceeded time limit");
          } else {
            guard.finish(RunStatus::kCompleted);
          }
        }
      }
      out.raw_log = call("read_log", [&] { return driver_.read_log(); });
    }
    call("uninstall_package", [&] { driver_.uninstall_package(sample.id); });
    installed = false;
  } catch (const DeviceError& e) {
    guard.finish(RunStatus::kDeviceError, e.what());
    if (installed) {
      try {
        driver_.uninstall_package(sample.id);
      } catch (const Error&) {
        note(sample.id + ": cleanup uninstall failed");
      }
    }
    note(sample.id + ": " + std::string(to_string(out.status)) + " (" +
         out.detail + ")");
    throw BatchAborted(e.what(), {out});
  }
  note(sample.id + ": " + std::string(to_string(out.status)));
  return out;
}

BatchResult SessionOrchestrator::batch_run(std::span<const AppSample> samples) {
  if (samples.empty()) throw Error("batch run over no samples");
  BatchResult result;
  LabelMap labels;
  for (const AppSample& s : samples) labels[s.id] = s.label;

  auto abort = [&](const std::string& what) {
    throw BatchAborted(what, std::move(result.outcomes));
  };
  if (!prepared_) {
    const auto report = prepare_environment();
    if (report.state != DevicePreparationReport::State::kReady) {
      abort("device preparation held on low battery");
    }
  }
  for (const AppSample& sample : samples) {
    int polls = 0;
    int level = 0;
    bool ready = false;
    try {
      ready = wait_for_battery(polls, level);
    } catch (const DeviceError& e) {
      abort(e.what());
    }
    if (!ready) abort("battery hold before " + sample.id);
    try {
      result.outcomes.push_back(run_app(sample));
    } catch (const BatchAborted& e) {
      for (const RunOutcome& o : e.partial()) result.outcomes.push_back(o);
      abort(e.what());
    }
  }
  result.stats = success_stats(result.outcomes, labels);
  return result;
}

}  // namespace droidbench
