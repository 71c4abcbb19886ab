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

#include "droidbench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "droidbench/error.hpp"
#include "droidbench/random.hpp"
#include "droidbench/text_io.hpp"

namespace droidbench {

namespace {

constexpr std::string_view kIntentPrefix = "android.intent.action.";

constexpr std::string_view kApiClasses[] = {
    "Landroid/telephony/TelephonyManager", "Landroid/telephony/SmsManager",
    "Ljava/lang/Runtime",                  "Ljava/lang/System",
    "Ljava/net/URL",                       "Ljava/net/HttpURLConnection",
    "Landroid/content/pm/PackageManager",  "Landroid/content/ContentResolver",
    "Landroid/content/Context",            "Landroid/location/LocationManager",
    "Ljava/util/Timer",                    "Ljavax/crypto/Cipher",
    "Ljava/io/FileOutputStream",           "Ljava/io/FileInputStream",
    "Landroid/app/ActivityManager",        "Landroid/net/ConnectivityManager",
    "Landroid/net/wifi/WifiManager",       "Ldalvik/system/DexClassLoader",
    "Ljava/lang/reflect/Method",           "Landroid/media/AudioRecord",
    "Landroid/hardware/Camera",            "Landroid/accounts/AccountManager",
    "Landroid/app/NotificationManager",    "Ljava/security/MessageDigest",
    "Landroid/util/Base64",                "Landroid/os/PowerManager",
};

constexpr std::string_view kApiMethods[] = {
    "getDeviceId",     "getSubscriberId",      "sendTextMessage",
    "exec",            "loadLibrary",          "openConnection",
    "getInstalledPackages", "query",           "insert",
    "delete",          "registerReceiver",     "startService",
    "getLastKnownLocation", "requestLocationUpdates", "schedule",
    "doFinal",         "getInputStream",       "getOutputStream",
    "invoke",          "setComponentEnabledSetting",
};

constexpr std::string_view kIntents[] = {
    "BOOT_COMPLETED",     "PACKAGE_ADDED",         "PACKAGE_REMOVED",
    "PACKAGE_REPLACED",   "USER_PRESENT",          "SCREEN_ON",
    "SCREEN_OFF",         "BATTERY_LOW",           "BATTERY_OKAY",
    "POWER_CONNECTED",    "POWER_DISCONNECTED",    "NEW_OUTGOING_CALL",
    "PHONE_STATE",        "TIME_SET",              "TIMEZONE_CHANGED",
    "DATE_CHANGED",       "AIRPLANE_MODE",         "CONFIGURATION_CHANGED",
    "LOCALE_CHANGED",     "MEDIA_MOUNTED",         "MEDIA_UNMOUNTED",
    "MEDIA_SCANNER_FINISHED", "HEADSET_PLUG",      "WALLPAPER_CHANGED",
    "DEVICE_STORAGE_LOW", "PROVIDER_CHANGED",      "CAMERA_BUTTON",
    "DOCK_EVENT",         "INPUT_METHOD_CHANGED",  "SHUTDOWN",
};

struct NoiseTemplate {
  std::string_view tag;
  char level;
  std::string_view text;  // `%s` is replaced by the app id
};

constexpr NoiseTemplate kNoise[] = {
    {"ActivityManager", 'I', "Displayed %s/.MainActivity: +412ms"},
    {"ActivityManager", 'I', "Start proc %s for activity %s/.MainActivity"},
    {"dalvikvm", 'D', "GC_CONCURRENT freed 2048K, 12% free 9536K/10759K"},
    {"Choreographer", 'I', "Skipped 31 frames! The application may be doing "
                           "too much work on its main thread."},
    {"WindowManager", 'W', "Window focus changed for %s"},
    {"art", 'I', "Background sticky concurrent mark sweep GC freed 5120(1MB)"},
    {"chromium", 'I', "[INFO:CONSOLE(1)] page loaded"},
    {"OpenGLRenderer", 'D', "Enabling debug mode 0"},
    {"InputMethodManager", 'D', "focusOut view=0x41b2c6e8"},
    {"Monkey", 'I', ":Sending Touch (ACTION_DOWN): 0:(540.0,960.0)"},
    {"Monkey", 'I', ":Sending Key (ACTION_UP): 4    // KEYCODE_BACK"},
    {"SharedPreferencesImpl", 'W', "prefs file for %s not found, creating"},
};

constexpr std::string_view kMalformed[] = {
    "\tat com.android.internal.os.ZygoteInit.main(ZygoteInit.java:1)",
    "W/System.err(  812): java.io.IOException: read failed",
};

constexpr std::string_view kBeginningOfMain = "--------- beginning of main";

// Text used to look for a signature inside log messages.
std::string match_key(const std::string& signature, bool intent) {
  if (intent && signature.rfind(kIntentPrefix, 0) == 0) {
    return signature.substr(kIntentPrefix.size());
  }
  return signature;
}

SignatureList make_signatures(const CorpusSpec& spec) {
  const std::size_t n_api = spec.n_features - spec.n_intent_features;
  std::vector<std::string> api;
  for (std::string_view method : kApiMethods) {
    for (std::string_view cls : kApiClasses) {
      if (api.size() == n_api) break;
      api.push_back(std::string(cls) + ";->" + std::string(method));
    }
  }
  std::vector<std::string> intents;
  for (std::size_t i = 0; i < spec.n_intent_features; ++i) {
    intents.push_back(std::string(kIntentPrefix) + std::string(kIntents[i]));
  }
  SignatureList list(std::move(api), std::move(intents));

  // Presence in a log is decided by substring search, so no signature may be
  // hidden inside another one or inside the filler text.
  std::vector<std::string> keys;
  for (const std::string& s : list.all()) {
    keys.push_back(match_key(s, list.is_intent(s)));
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = 0; j < keys.size(); ++j) {
      if (i != j && keys[j].find(keys[i]) != std::string::npos) {
        throw Error("generated signature '" + keys[i] + "' occurs inside '" +
                    keys[j] + "'");
      }
    }
    for (const NoiseTemplate& t : kNoise) {
      if (t.text.find(keys[i]) != std::string_view::npos) {
        throw Error("signature '" + keys[i] + "' occurs in filler text");
      }
    }
    for (std::string_view m : kMalformed) {
      if (m.find(keys[i]) != std::string_view::npos) {
        throw Error("signature '" + keys[i] + "' occurs in filler text");
      }
    }
  }
  return list;
}

std::string app_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "app%05zu", index + 1);
  return buf;
}

std::string fill(std::string_view text, const std::string& id) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 1 < text.size() && text[i + 1] == 's') {
      out += "com.sample." + id;
      ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

// One line of an app's log before timestamps are assigned. `feature` is the
// signature the line mentions, or -1 for filler.
struct Event {
  long feature = -1;
  bool raw = false;  // emitted verbatim, not in logcat layout
  std::string tag;
  char level = 'I';
  std::string message;
};

std::vector<Event> app_events(const PlannedApp& app,
                              const SignatureList& signatures, Rng& rng) {
  const std::vector<std::string> names = signatures.all();
  std::vector<Event> events;
  for (std::size_t f = 0; f < app.present.size(); ++f) {
    if (!app.present[f]) continue;
    const std::size_t repeats = 1 + rng.below(2);
    for (std::size_t r = 0; r < repeats; ++r) {
      Event e;
      e.feature = static_cast<long>(f);
      if (signatures.is_intent(names[f])) {
        e.tag = "IntentMonitor";
        e.level = 'D';
        const bool full = rng.bernoulli(0.5);
        e.message = "received " +
                    (full ? names[f] : match_key(names[f], true)) +
                    " flg=0x10";
      } else {
        e.tag = "ApiMonitor";
        e.message = "invoke " + names[f] + "()";
      }
      events.push_back(std::move(e));
    }
  }
  const std::size_t filler = 4 + rng.below(8);
  for (std::size_t i = 0; i < filler; ++i) {
    const NoiseTemplate& t = kNoise[rng.below(std::size(kNoise))];
    events.push_back({-1, false, std::string(t.tag), t.level,
                      fill(t.text, app.id)});
  }
  if (rng.bernoulli(0.1)) {
    events.push_back(
        {-1, true, "", 'I',
         std::string(kMalformed[rng.below(std::size(kMalformed))])});
  }
  rng.shuffle(events);
  if (rng.bernoulli(0.5)) {
    events.insert(events.begin(), {-1, true, "", 'I',
                                   std::string(kBeginningOfMain)});
  }
  return events;
}

std::string render_log(const std::vector<Event>& events,
                       const std::set<std::size_t>& hidden, Rng& rng) {
  std::uint64_t clock_ms = 9ULL * 3600'000 + rng.below(8ULL * 3600'000);
  const auto pid = static_cast<std::uint32_t>(1000 + rng.below(30000));
  std::string out;
  for (const Event& e : events) {
    if (e.feature >= 0 && hidden.count(static_cast<std::size_t>(e.feature))) {
      continue;
    }
    clock_ms += 1 + rng.below(400);
    if (e.raw) {
      out += e.message + '\n';
      continue;
    }
    LogLine line;
    line.timestamp.month = 10;
    line.timestamp.day = 17;
    line.timestamp.hour = static_cast<int>(clock_ms / 3600'000 % 24);
    line.timestamp.minute = static_cast<int>(clock_ms / 60'000 % 60);
    line.timestamp.second = static_cast<int>(clock_ms / 1000 % 60);
    line.timestamp.millis = static_cast<int>(clock_ms % 1000);
    line.pid = pid;
    line.tid = pid + static_cast<std::uint32_t>(rng.below(4));
    line.level = e.level;
    line.tag = e.tag;
    line.message = e.message;
    out += format_log_line(line) + '\n';
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string join(const std::set<std::string>& items) {
  return join(std::vector<std::string>(items.begin(), items.end()));
}

std::vector<std::string> split_list(const std::string& value) {
  if (value.empty()) return {};
  std::vector<std::string> out;
  for (const std::string& item : split(value, ',')) {
    out.emplace_back(trim(item));
  }
  return out;
}

std::string failure_key(const std::string& env, Label label) {
  return "failure_rate." + env + "." + std::string(to_string(label));
}

}  // namespace

void CorpusSpec::validate() const {
  if (n_malware == 0 || n_benign == 0) {
    throw UsageError("corpus needs at least one app of each class");
  }
  if (n_features == 0) throw UsageError("corpus needs at least one feature");
  if (n_intent_features > n_features ||
      n_intent_features > std::size(kIntents)) {
    throw UsageError("n_intent_features must be <= n_features and <= " +
                     std::to_string(std::size(kIntents)));
  }
  if (n_features - n_intent_features >
      std::size(kApiClasses) * std::size(kApiMethods)) {
    throw UsageError("too many API features requested");
  }
  if (n_informative > n_features) {
    throw UsageError("n_informative must be <= n_features");
  }
  if (!(flip_noise >= 0.0 && flip_noise < 0.5)) {
    throw UsageError("flip_noise must be in [0, 0.5)");
  }
  if (!(noise_rate_min >= 0.0 && noise_rate_min <= noise_rate_max &&
        noise_rate_max <= 1.0)) {
    throw UsageError("noise rates must satisfy 0 <= min <= max <= 1");
  }
  if (env_a.empty() || env_b.empty() || env_a == env_b) {
    throw UsageError("environment names must be distinct and non-empty");
  }
  for (const std::string& env : {env_a, env_b}) {
    if (env.find_first_of(" \t,=/") != std::string::npos) {
      throw UsageError("environment name '" + env +
                       "' may not contain spaces, commas, '=' or '/'");
    }
  }
  for (std::size_t f : env_gap) {
    if (f >= n_features) throw UsageError("env_gap index out of range");
  }
  if (env_gap_informative > n_informative) {
    throw UsageError("env_gap_informative must be <= n_informative");
  }
  for (const FailureRates& r : {failures_a, failures_b}) {
    if (!(r.malware >= 0 && r.malware <= 1 && r.benign >= 0 && r.benign <= 1)) {
      throw UsageError("failure rates must be in [0, 1]");
    }
  }
  if (!(no_activity_rate >= 0 && no_activity_rate <= 1)) {
    throw UsageError("no_activity_rate must be in [0, 1]");
  }
}

CorpusSpec full_scale_spec(std::uint64_t seed) {
  CorpusSpec spec;
  spec.n_malware = 1222;
  spec.n_benign = 1222;
  spec.n_features = 178;
  spec.n_informative = 12;
  spec.flip_noise = 0.25;
  spec.env_gap_informative = 6;
  // Failed runs per 1222 apps: 283 malware / 436 benign on the emulator,
  // 17 malware / 125 benign on the phone.
  spec.failures_a = {283.0 / 1222.0, 436.0 / 1222.0};
  spec.failures_b = {17.0 / 1222.0, 125.0 / 1222.0};
  spec.no_activity_rate = 0.005;
  spec.seed = seed;
  return spec;
}

LabelMap Corpus::labels() const {
  LabelMap out;
  for (const PlannedApp& app : apps) out.emplace(app.id, app.label);
  return out;
}

const std::set<std::string>& Corpus::crash_set(const std::string& env) const {
  if (env == spec.env_a) return crash_a;
  if (env == spec.env_b) return crash_b;
  throw UsageError("unknown environment '" + env + "'");
}

const std::map<std::string, std::string>& Corpus::logs(
    const std::string& env) const {
  if (env == spec.env_a) return logs_a;
  if (env == spec.env_b) return logs_b;
  throw UsageError("unknown environment '" + env + "'");
}

Corpus plan_corpus(const CorpusSpec& spec) {
  spec.validate();
  Corpus corpus;
  corpus.spec = spec;
  corpus.signatures = make_signatures(spec);
  const std::vector<std::string> names = corpus.signatures.all();
  const std::size_t d = spec.n_features;

  // Which features carry the class signal.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng feature_rng(derive_seed(spec.seed, hash_string("features")));
  feature_rng.shuffle(order);
  const std::vector<std::size_t> picked(order.begin(),
                                        order.begin() + static_cast<long>(spec.n_informative));
  std::set<std::size_t> informative(picked.begin(), picked.end());
  std::set<std::size_t> gap = spec.env_gap;
  gap.insert(picked.begin(),
             picked.begin() + static_cast<long>(spec.env_gap_informative));
  for (std::size_t f : informative) corpus.informative.push_back(names[f]);
  for (std::size_t f : gap) corpus.env_gap.push_back(names[f]);

  std::vector<double> noise_rate(d, 0.0);
  Rng noise_rng(derive_seed(spec.seed, hash_string("noise")));
  for (std::size_t f = 0; f < d; ++f) {
    if (informative.count(f)) continue;
    noise_rate[f] = noise_rng.uniform(spec.noise_rate_min, spec.noise_rate_max);
    corpus.noise_rates[names[f]] = noise_rate[f];
  }

  // Labels are shuffled so ids say nothing about the class.
  std::vector<Label> labels(spec.n_malware, Label::kMalware);
  labels.resize(spec.n_malware + spec.n_benign, Label::kBenign);
  Rng label_rng(derive_seed(spec.seed, hash_string("labels")));
  label_rng.shuffle(labels);

  const double p_mal = 1.0 - spec.flip_noise;
  const double p_ben = spec.flip_noise;
  std::vector<double> fragility(labels.size());
  std::vector<double> jitter_a(labels.size());
  std::vector<double> jitter_b(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    PlannedApp app;
    app.id = app_id(i);
    app.label = labels[i];
    Rng rng(derive_seed(spec.seed, i));
    app.present.resize(d);
    for (std::size_t f = 0; f < d; ++f) {
      const double p = informative.count(f)
                           ? (app.label == Label::kMalware ? p_mal : p_ben)
                           : noise_rate[f];
      app.present[f] = rng.bernoulli(p) ? 1 : 0;
    }
    fragility[i] = rng.uniform();
    jitter_a[i] = rng.uniform();
    jitter_b[i] = rng.uniform();

    const std::vector<Event> events = app_events(app, corpus.signatures, rng);
    Rng log_a(derive_seed(derive_seed(spec.seed, i), hash_string(spec.env_a)));
    Rng log_b(derive_seed(derive_seed(spec.seed, i), hash_string(spec.env_b)));
    corpus.logs_a[app.id] = render_log(events, gap, log_a);
    corpus.logs_b[app.id] = render_log(events, {}, log_b);
    corpus.apps.push_back(std::move(app));
  }

  // Failures per class. The most fragile apps have no launchable activity
  // and fail everywhere; crashes are taken from the next most fragile ones,
  // with a little per-environment jitter so the sets nest only loosely.
  for (Label label : kAllLabels) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) members.push_back(i);
    }
    const double n_class = static_cast<double>(members.size());
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t x, std::size_t y) {
                       return fragility[x] > fragility[y];
                     });
    const auto n_none =
        static_cast<std::size_t>(std::llround(spec.no_activity_rate * n_class));
    for (std::size_t r = 0; r < n_none; ++r) {
      corpus.no_activity.insert(corpus.apps[members[r]].id);
    }
    const std::vector<std::size_t> rest(members.begin() + static_cast<long>(n_none),
                                        members.end());
    auto pick = [&](const FailureRates& rates, const std::vector<double>& jitter,
                    std::set<std::string>& out) {
      const double rate =
          label == Label::kMalware ? rates.malware : rates.benign;
      const auto failures =
          static_cast<std::size_t>(std::llround(rate * n_class));
      if (failures < n_none) {
        throw UsageError("failure rate is below no_activity_rate");
      }
      std::vector<std::size_t> ranked = rest;
      std::stable_sort(ranked.begin(), ranked.end(),
                       [&](std::size_t x, std::size_t y) {
                         return fragility[x] + 0.15 * jitter[x] >
                                fragility[y] + 0.15 * jitter[y];
                       });
      for (std::size_t r = 0; r < failures - n_none; ++r) {
        out.insert(corpus.apps[ranked[r]].id);
      }
    };
    pick(spec.failures_a, jitter_a, corpus.crash_a);
    pick(spec.failures_b, jitter_b, corpus.crash_b);
  }
  return corpus;
}

Manifest manifest_of(const Corpus& corpus) {
  Manifest m;
  m.spec = corpus.spec;
  m.informative = corpus.informative;
  m.env_gap = corpus.env_gap;
  m.noise_rates = corpus.noise_rates;
  m.crash[corpus.spec.env_a] = corpus.crash_a;
  m.crash[corpus.spec.env_b] = corpus.crash_b;
  m.no_activity = corpus.no_activity;
  return m;
}

std::string format_manifest(const Manifest& m) {
  const CorpusSpec& s = m.spec;
  std::string out = "# synthetic corpus ground truth\nversion = 1\n";
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  put("seed", std::to_string(s.seed));
  put("n_malware", std::to_string(s.n_malware));
  put("n_benign", std::to_string(s.n_benign));
  put("n_features", std::to_string(s.n_features));
  put("n_intent_features", std::to_string(s.n_intent_features));
  put("n_informative", std::to_string(s.n_informative));
  put("flip_noise", format_double(s.flip_noise));
  put("noise_rate_min", format_double(s.noise_rate_min));
  put("noise_rate_max", format_double(s.noise_rate_max));
  put("env_a", s.env_a);
  put("env_b", s.env_b);
  std::vector<std::string> gap_indices;
  for (std::size_t f : s.env_gap) gap_indices.push_back(std::to_string(f));
  put("env_gap_indices", join(gap_indices));
  put("env_gap_informative", std::to_string(s.env_gap_informative));
  put(failure_key(s.env_a, Label::kMalware), format_double(s.failures_a.malware));
  put(failure_key(s.env_a, Label::kBenign), format_double(s.failures_a.benign));
  put(failure_key(s.env_b, Label::kMalware), format_double(s.failures_b.malware));
  put(failure_key(s.env_b, Label::kBenign), format_double(s.failures_b.benign));
  put("no_activity_rate", format_double(s.no_activity_rate));
  put("rule", "informative features present with probability 1-flip_noise "
              "in malware and flip_noise in benign apps");
  put("informative", join(m.informative));
  put("env_gap", join(m.env_gap));
  for (const auto& [name, rate] : m.noise_rates) {
    put("noise_rate." + name, format_double(rate));
  }
  for (const auto& [env, ids] : m.crash) put("crash." + env, join(ids));
  put("no_activity", join(m.no_activity));
  return out;
}

Manifest parse_manifest(std::string_view text) {
  const std::vector<KeyValue> entries = parse_key_values(text);
  std::map<std::string, const KeyValue*> by_key;
  for (const KeyValue& kv : entries) by_key[kv.key] = &kv;
  std::set<std::string> used;

  auto get = [&](const std::string& key) -> const KeyValue& {
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw ConfigError(0, "manifest lacks '" + key + "'");
    }
    used.insert(key);
    return *it->second;
  };
  auto size_of = [&](const std::string& key) {
    const KeyValue& kv = get(key);
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(kv.value, &pos);
      if (pos != kv.value.size()) throw std::invalid_argument(kv.value);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError(kv.line, "'" + key + "' is not a count");
    }
  };
  auto real = [&](const std::string& key) {
    const KeyValue& kv = get(key);
    try {
      return parse_double(kv.value);
    } catch (const Error&) {
      throw ConfigError(kv.line, "'" + key + "' is not a number");
    }
  };

  if (get("version").value != "1") {
    throw ConfigError(get("version").line, "unsupported manifest version");
  }
  Manifest m;
  CorpusSpec& s = m.spec;
  s.seed = size_of("seed");
  s.n_malware = size_of("n_malware");
  s.n_benign = size_of("n_benign");
  s.n_features = size_of("n_features");
  s.n_intent_features = size_of("n_intent_features");
  s.n_informative = size_of("n_informative");
  s.flip_noise = real("flip_noise");
  s.noise_rate_min = real("noise_rate_min");
  s.noise_rate_max = real("noise_rate_max");
  s.env_a = get("env_a").value;
  s.env_b = get("env_b").value;
  for (const std::string& f : split_list(get("env_gap_indices").value)) {
    try {
      s.env_gap.insert(std::stoul(f));
    } catch (const std::exception&) {
      throw ConfigError(get("env_gap_indices").line, "bad feature index");
    }
  }
  s.env_gap_informative = size_of("env_gap_informative");
  s.failures_a = {real(failure_key(s.env_a, Label::kMalware)),
                  real(failure_key(s.env_a, Label::kBenign))};
  s.failures_b = {real(failure_key(s.env_b, Label::kMalware)),
                  real(failure_key(s.env_b, Label::kBenign))};
  s.no_activity_rate = real("no_activity_rate");
  get("rule");
  m.informative = split_list(get("informative").value);
  m.env_gap = split_list(get("env_gap").value);
  for (const std::string& env : {s.env_a, s.env_b}) {
    for (const std::string& id : split_list(get("crash." + env).value)) {
      m.crash[env].insert(id);
    }
    m.crash.try_emplace(env);
  }
  for (const std::string& id : split_list(get("no_activity").value)) {
    m.no_activity.insert(id);
  }
  for (const KeyValue& kv : entries) {
    if (kv.key.rfind("noise_rate.", 0) == 0) {
      m.noise_rates[kv.key.substr(11)] = real(kv.key);
    }
  }
  for (const KeyValue& kv : entries) {
    if (!used.count(kv.key)) {
      throw ConfigError(kv.line, "unknown manifest key '" + kv.key + "'");
    }
  }
  return m;
}

Manifest generate(const CorpusSpec& spec,
                  const std::filesystem::path& out_dir) {
  const Corpus corpus = plan_corpus(spec);
  const Manifest manifest = manifest_of(corpus);
  write_file_atomic(out_dir / "signatures.txt",
                    format_signatures(corpus.signatures));
  write_file_atomic(out_dir / "labels.csv", format_labels_csv(corpus.labels()));
  write_file_atomic(out_dir / "contacts.csv",
                    "# name,phone\nAlice Example,+15550100\n"
                    "Bob Example,+15550101\nCarol Example,+15550102\n");
  for (const std::string& env : {spec.env_a, spec.env_b}) {
    for (const auto& [id, log] : corpus.logs(env)) {
      write_file_atomic(out_dir / env / "logs" / (id + ".log"), log);
    }
  }
  // Written last so a manifest marks a complete corpus.
  write_file_atomic(out_dir / "manifest.txt", format_manifest(manifest));
  return manifest;
}

Dataset planted_dataset(const Corpus& corpus, const std::string& env) {
  const std::vector<std::string> names = corpus.signatures.all();
  std::set<std::size_t> hidden;
  if (env == corpus.spec.env_a) {
    for (std::size_t f = 0; f < names.size(); ++f) {
      if (std::find(corpus.env_gap.begin(), corpus.env_gap.end(), names[f]) !=
          corpus.env_gap.end()) {
        hidden.insert(f);
      }
    }
  } else if (env != corpus.spec.env_b) {
    throw UsageError("unknown environment '" + env + "'");
  }
  std::vector<FeatureVector> rows;
  for (const PlannedApp& app : corpus.apps) {
    FeatureVector row{app.id, app.present, app.label};
    for (std::size_t f : hidden) row.bits[f] = 0;
    rows.push_back(std::move(row));
  }
  return Dataset(Vocabulary(names), std::move(rows), env);
}

}  // namespace droidbench
