// Copyright 2026 The GoodVibes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through the C API.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "goodvibes/goodvibes.h"

namespace {

struct ConfigDeleter {
  void operator()(gv_config* c) const { gv_config_free(c); }
};
struct SimulationDeleter {
  void operator()(gv_simulation* s) const { gv_simulation_free(s); }
};
struct ServiceDeleter {
  void operator()(gv_service* s) const { gv_service_free(s); }
};
struct PatternDeleter {
  void operator()(gv_pattern* p) const { gv_pattern_free(p); }
};
struct TimelineDeleter {
  void operator()(gv_timeline* t) const { gv_timeline_free(t); }
};

using ConfigPtr = std::unique_ptr<gv_config, ConfigDeleter>;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

void Check(gv_status status, const std::string& context) {
  if (status != GV_OK) {
    throw CliError(2, context + ": " + gv_status_name(status) + ": " +
                          gv_last_error());
  }
}

std::string TakeString(char* s) {
  std::string out = s == nullptr ? "" : s;
  gv_string_free(s);
  return out;
}

// Options shared by simulate and serve; mapped onto config keys.
struct ConfigOptions {
  std::optional<std::string> seed;
  std::optional<std::string> participants;
  std::optional<std::string> counts;
  std::optional<std::string> pattern;
  std::optional<std::string> pattern_policy;
  std::optional<std::string> pattern_pool;
  std::optional<std::string> profile;
  std::optional<std::string> profile_mode;
  std::optional<std::string> seed_policy;
  std::optional<std::string> absence_mode;
  std::optional<std::string> timing;
  std::optional<std::string> link_latency;
  std::optional<std::string> link_loss;
  std::optional<std::string> output_dir;
  std::vector<std::string> extra;  // key=value

  void Register(CLI::App* app) {
    app->add_option("--seed", seed, "Run seed");
    app->add_option("--participants", participants, "Number of participants");
    app->add_option("--counts", counts,
                    "Trials per scenario: '9,6,3,3,3' or 'S1:1,S4:2'");
    app->add_option("--pattern", pattern,
                    "Enroll this pattern for every participant, e.g. '1 3'");
    app->add_option("--pattern-policy", pattern_policy,
                    "mixed | chosen | assigned | explicit");
    app->add_option("--pattern-pool", pattern_pool,
                    "Enrollment pool, ';'-separated (default '2;1 3')");
    app->add_option("--profile", profile, "Perceiver profile file");
    app->add_option("--profile-mode", profile_mode, "study | by_group");
    app->add_option("--seed-policy", seed_policy, "per_participant | global");
    app->add_option("--absence-mode", absence_mode,
                    "alternate | phishing | suppression");
    app->add_option("--timing", timing, "burst,intra_gap,inter_gap in ms");
    app->add_option("--link-latency", link_latency, "min,max in ms");
    app->add_option("--link-loss", link_loss, "Ping loss probability");
    app->add_option("--out", output_dir, "Output directory")
        ->envname("GOODVIBES_OUTPUT_DIR");
    app->add_option("--set", extra, "Any config key=value (repeatable)");
  }

  ConfigPtr Build() const {
    gv_config* raw = nullptr;
    Check(gv_config_create(&raw), "config");
    ConfigPtr config(raw);
    auto set = [&](const char* key, const std::optional<std::string>& value) {
      if (value) Check(gv_config_set(config.get(), key, value->c_str()), key);
    };
    set("seed", seed);
    set("participants", participants);
    set("counts", counts);
    set("pattern_pool", pattern_pool);
    set("pattern_policy", pattern_policy);
    set("pattern", pattern);
    set("profile", profile);
    set("profile_mode", profile_mode);
    set("seed_policy", seed_policy);
    set("absence_mode", absence_mode);
    set("timing", timing);
    set("link_latency", link_latency);
    set("link_loss", link_loss);
    set("output_dir", output_dir);
    for (const std::string& kv : extra) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw CliError(2, "--set expects key=value, got '" + kv + "'");
      }
      Check(gv_config_set(config.get(), kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str()),
            kv.substr(0, eq));
    }
    Check(gv_config_validate(config.get()), "config");
    return config;
  }
};

int RunSimulate(const ConfigOptions& options, bool strict, bool quiet) {
  ConfigPtr config = options.Build();
  gv_simulation* raw = nullptr;
  Check(gv_simulate(config.get(), &raw), "simulate");
  std::unique_ptr<gv_simulation, SimulationDeleter> sim(raw);

  char* dir = nullptr;
  Check(gv_config_output_dir(config.get(), &dir), "output dir");
  const std::string out_dir = TakeString(dir);
  Check(gv_simulation_write(sim.get(), out_dir.c_str()), "write outputs");

  if (!quiet) {
    char* text = nullptr;
    Check(gv_simulation_report_text(sim.get(), &text), "report");
    std::cout << TakeString(text);
    std::cout << "\nRecords: " << gv_simulation_record_count(sim.get())
              << ", outputs in " << out_dir << "\n";
  }
  if (strict && !gv_simulation_all_passed(sim.get())) return 3;
  return 0;
}

int RunSchedule(const ConfigOptions& options, int participant,
                const std::optional<std::string>& file) {
  ConfigPtr config = options.Build();
  char* text = nullptr;
  Check(gv_config_schedule_export(config.get(), participant, &text), "schedule");
  const std::string lines = TakeString(text);
  if (file) {
    std::ofstream out(*file, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(2, "cannot write '" + *file + "'");
    out << lines;
  } else {
    std::cout << lines;
  }
  return 0;
}

int RunRender(const std::string& pattern_text, const std::string& timing) {
  gv_pattern* raw_pattern = nullptr;
  Check(gv_pattern_parse(pattern_text.c_str(), &raw_pattern), "pattern");
  std::unique_ptr<gv_pattern, PatternDeleter> pattern(raw_pattern);
  long long burst = 60, intra = 60, inter = 200;
  if (std::sscanf(timing.c_str(), "%lld,%lld,%lld", &burst, &intra, &inter) != 3) {
    throw CliError(2, "--timing expects burst,intra_gap,inter_gap");
  }
  gv_timeline* raw_timeline = nullptr;
  Check(gv_timeline_render(pattern.get(), burst, intra, inter, &raw_timeline),
        "render");
  std::unique_ptr<gv_timeline, TimelineDeleter> timeline(raw_timeline);
  char* text = nullptr;
  Check(gv_timeline_to_string(timeline.get(), &text), "render");
  std::cout << TakeString(text) << "\n"
            << "total_ms " << gv_timeline_total_ms(timeline.get()) << "\n";
  return 0;
}

int RunReport(const std::vector<std::string>& logs, bool groups, bool json,
              bool strict) {
  std::vector<const char*> paths;
  for (const std::string& p : logs) paths.push_back(p.c_str());
  char* text = nullptr;
  char* json_text = nullptr;
  int passed = 0;
  Check(gv_aggregate_logs(paths.data(), paths.size(), groups ? 1 : 0, &text,
                          &json_text, &passed),
        "report");
  const std::string table = TakeString(text);
  const std::string structured = TakeString(json_text);
  std::cout << (json ? structured + "\n" : table);
  return strict && !passed ? 3 : 0;
}

int RunServe(const ConfigOptions& options, const std::string& bind,
             std::optional<std::string> log_path, bool recover) {
  ConfigPtr config = options.Build();
  const size_t colon = bind.rfind(':');
  if (colon == std::string::npos) {
    throw CliError(2, "--bind expects host:port");
  }
  const std::string host = bind.substr(0, colon);
  const int port = std::stoi(bind.substr(colon + 1));
  if (!log_path) {
    char* dir = nullptr;
    Check(gv_config_output_dir(config.get(), &dir), "output dir");
    const std::string out_dir = TakeString(dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    log_path = out_dir + "/live_session.jsonl";
  }

  // SIGINT/SIGTERM are handled on a dedicated thread via sigwait.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  gv_service* raw = nullptr;
  Check(gv_service_create(config.get(), log_path->c_str(), recover ? 1 : 0, &raw),
        "serve");
  std::unique_ptr<gv_service, ServiceDeleter> service(raw);
  int bound = 0;
  Check(gv_service_bind(service.get(), host.c_str(), port, &bound), "bind");
  std::cout << "listening on http://" << host << ":" << bound
            << " (log: " << *log_path << ")" << std::endl;

  std::thread waiter([&service, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    gv_service_stop(service.get());
  });
  const gv_status status = gv_service_serve(service.get());
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  Check(status, "serve");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GoodVibes phone-to-user authentication simulator"};
  app.require_subcommand(1);

  ConfigOptions sim_options;
  bool strict = false;
  bool quiet = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simulate a full study and compare against reference rates");
  sim_options.Register(simulate);
  simulate->add_flag("--strict", strict,
                     "Exit with status 3 if any reference comparison fails");
  simulate->add_flag("--quiet", quiet, "Do not print the report");

  ConfigOptions schedule_options;
  int participant = -1;
  std::optional<std::string> schedule_file;
  CLI::App* schedule =
      app.add_subcommand("schedule", "Print a session schedule");
  schedule_options.Register(schedule);
  schedule->add_option("--participant", participant,
                       "Print this participant's schedule under the seed policy");
  schedule->add_option("--file", schedule_file, "Write to a file instead");

  std::string pattern_text;
  std::string timing = "60,60,200";
  CLI::App* render = app.add_subcommand("render", "Render a pattern timeline");
  render->add_option("pattern", pattern_text, "Pattern, e.g. '1 3'")->required();
  render->add_option("--timing", timing, "burst,intra_gap,inter_gap in ms");

  std::vector<std::string> logs;
  bool groups = false;
  bool json = false;
  bool report_strict = false;
  CLI::App* report =
      app.add_subcommand("report", "Aggregate session logs into a report");
  report->add_option("logs", logs, "Session log files")->required();
  report->add_flag("--groups", groups, "Also compare group targets");
  report->add_flag("--json", json, "Print the structured report");
  report->add_flag("--strict", report_strict,
                   "Exit with status 3 if any comparison fails");

  ConfigOptions serve_options;
  std::string bind = "127.0.0.1:8080";
  std::optional<std::string> log_path;
  bool recover = false;
  CLI::App* serve =
      app.add_subcommand("serve", "Run a live supervisor session service");
  serve_options.Register(serve);
  serve->add_option("--bind", bind, "host:port (port 0 picks a free one)");
  serve->add_option("--log", log_path, "Session log path");
  serve->add_flag("--recover", recover, "Replay an existing log and continue");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return RunSimulate(sim_options, strict, quiet);
    if (*schedule) return RunSchedule(schedule_options, participant, schedule_file);
    if (*render) return RunRender(pattern_text, timing);
    if (*report) return RunReport(logs, groups, json, report_strict);
    if (*serve) return RunServe(serve_options, bind, log_path, recover);
  } catch (const CliError& e) {
    std::cerr << "goodvibes: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
