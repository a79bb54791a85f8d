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

#include "goodvibes/goodvibes.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "goodvibes/error.h"
#include "goodvibes/http_service.h"
#include "goodvibes/live_session.h"
#include "goodvibes/metrics.h"
#include "goodvibes/pattern.h"
#include "goodvibes/run_config.h"
#include "goodvibes/simulate.h"

struct gv_pattern {
  goodvibes::PatternSpec spec;
};

struct gv_timeline {
  goodvibes::VibrationTimeline timeline;
};

struct gv_config {
  goodvibes::RunConfig config;
};

struct gv_simulation {
  goodvibes::SimulationResult result;
};

struct gv_service {
  std::unique_ptr<goodvibes::LiveSession> session;
  std::unique_ptr<goodvibes::HttpService> http;
};

namespace {

thread_local std::string last_error;

gv_status Fail(gv_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
gv_status Guard(F&& body) {
  try {
    last_error.clear();
    body();
    return GV_OK;
  } catch (const goodvibes::Error& e) {
    return Fail(static_cast<gv_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GV_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(GV_ERR_INTERNAL, "unknown error");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void RequireNonNull(const void* p, const char* what) {
  if (p == nullptr) {
    goodvibes::Throw(goodvibes::ErrorCode::kInvalidArgument,
                     std::string(what) + " must not be NULL");
  }
}

}  // namespace

extern "C" {

const char* gv_version(void) { return "0.1.0"; }

const char* gv_status_name(gv_status status) {
  static thread_local std::string name;
  name = std::string(
      goodvibes::ErrorCodeName(static_cast<goodvibes::ErrorCode>(status)));
  return name.c_str();
}

const char* gv_last_error(void) { return last_error.c_str(); }

void gv_string_free(char* s) { std::free(s); }

gv_status gv_pattern_parse(const char* text, gv_pattern** out) {
  return Guard([&] {
    RequireNonNull(text, "text");
    RequireNonNull(out, "out");
    *out = new gv_pattern{goodvibes::PatternSpec::Parse(text)};
  });
}

void gv_pattern_free(gv_pattern* pattern) { delete pattern; }

gv_status gv_pattern_to_string(const gv_pattern* pattern, char** out) {
  return Guard([&] {
    RequireNonNull(pattern, "pattern");
    RequireNonNull(out, "out");
    *out = CopyString(pattern->spec.ToString());
  });
}

gv_status gv_timeline_render(const gv_pattern* pattern, int64_t burst_ms,
                             int64_t intra_gap_ms, int64_t inter_gap_ms,
                             gv_timeline** out) {
  return Guard([&] {
    RequireNonNull(pattern, "pattern");
    RequireNonNull(out, "out");
    goodvibes::TimingParams timing{burst_ms, intra_gap_ms, inter_gap_ms};
    *out = new gv_timeline{goodvibes::RenderTimeline(pattern->spec, timing)};
  });
}

void gv_timeline_free(gv_timeline* timeline) { delete timeline; }

size_t gv_timeline_burst_count(const gv_timeline* timeline) {
  return timeline == nullptr ? 0 : timeline->timeline.size();
}

gv_status gv_timeline_burst(const gv_timeline* timeline, size_t i,
                            int64_t* start_ms, int64_t* duration_ms) {
  return Guard([&] {
    RequireNonNull(timeline, "timeline");
    if (i >= timeline->timeline.size()) {
      goodvibes::Throw(goodvibes::ErrorCode::kOutOfRange, "burst index out of range");
    }
    const goodvibes::Burst& b = timeline->timeline.bursts()[i];
    if (start_ms != nullptr) *start_ms = b.start_ms;
    if (duration_ms != nullptr) *duration_ms = b.duration_ms;
  });
}

int64_t gv_timeline_total_ms(const gv_timeline* timeline) {
  return timeline == nullptr ? 0 : goodvibes::TotalDuration(timeline->timeline);
}

gv_status gv_timeline_to_string(const gv_timeline* timeline, char** out) {
  return Guard([&] {
    RequireNonNull(timeline, "timeline");
    RequireNonNull(out, "out");
    *out = CopyString(timeline->timeline.ToString());
  });
}

gv_status gv_config_create(gv_config** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = new gv_config{};
  });
}

void gv_config_free(gv_config* config) { delete config; }

gv_status gv_config_set(gv_config* config, const char* key, const char* value) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(key, "key");
    RequireNonNull(value, "value");
    config->config.Set(key, value);
  });
}

gv_status gv_config_validate(const gv_config* config) {
  return Guard([&] {
    RequireNonNull(config, "config");
    config->config.Validate();
  });
}

gv_status gv_config_to_json(const gv_config* config, char** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    *out = CopyString(config->config.ToJson().dump(2));
  });
}

gv_status gv_config_output_dir(const gv_config* config, char** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    *out = CopyString(config->config.output_dir.string());
  });
}

gv_status gv_schedule_export(uint64_t seed, const int* counts, char** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    goodvibes::ScenarioCounts c = goodvibes::kStudyCounts;
    if (counts != nullptr) std::copy(counts, counts + c.size(), c.begin());
    *out = CopyString(goodvibes::BuildSchedule(seed, c).Export());
  });
}

gv_status gv_config_schedule_export(const gv_config* config, int participant,
                                    char** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    const goodvibes::RunConfig& c = config->config;
    if (participant < 0) {
      *out = CopyString(goodvibes::BuildSchedule(c.seed, c.counts).Export());
      return;
    }
    if (participant >= c.participants) {
      goodvibes::Throw(goodvibes::ErrorCode::kOutOfRange,
                       "participant index out of range");
    }
    const goodvibes::ParticipantPlan plan =
        goodvibes::PlanParticipants(c)[static_cast<size_t>(participant)];
    *out = CopyString(
        goodvibes::BuildSchedule(plan.schedule_seed, c.counts, participant)
            .Export());
  });
}

gv_status gv_simulate(const gv_config* config, gv_simulation** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    *out = new gv_simulation{goodvibes::RunSimulation(config->config)};
  });
}

void gv_simulation_free(gv_simulation* simulation) { delete simulation; }

size_t gv_simulation_record_count(const gv_simulation* simulation) {
  return simulation == nullptr ? 0 : simulation->result.record_count();
}

int gv_simulation_all_passed(const gv_simulation* simulation) {
  return simulation != nullptr && simulation->result.comparison.all_passed();
}

gv_status gv_simulation_write(const gv_simulation* simulation,
                              const char* directory) {
  return Guard([&] {
    RequireNonNull(simulation, "simulation");
    RequireNonNull(directory, "directory");
    goodvibes::WriteSimulationOutputs(simulation->result, directory);
  });
}

gv_status gv_simulation_report_text(const gv_simulation* simulation,
                                    char** out) {
  return Guard([&] {
    RequireNonNull(simulation, "simulation");
    RequireNonNull(out, "out");
    *out = CopyString(goodvibes::FormatReportTable(
        simulation->result.report, simulation->result.comparison));
  });
}

gv_status gv_simulation_report_json(const gv_simulation* simulation,
                                    char** out) {
  return Guard([&] {
    RequireNonNull(simulation, "simulation");
    RequireNonNull(out, "out");
    *out = CopyString(goodvibes::ReportToJson(simulation->result.report,
                                              simulation->result.comparison)
                          .dump(2));
  });
}

gv_status gv_aggregate_logs(const char* const* paths, size_t count,
                            int include_groups, char** report_text,
                            char** report_json, int* all_passed) {
  return Guard([&] {
    if (count > 0) RequireNonNull(paths, "paths");
    std::vector<goodvibes::SessionLog> logs;
    for (size_t i = 0; i < count; ++i) {
      RequireNonNull(paths[i], "path");
      logs.push_back(goodvibes::ReadSessionLog(paths[i]));
    }
    goodvibes::AggregateReport report = goodvibes::Aggregate(logs);
    goodvibes::Comparison comparison = goodvibes::CompareToReference(
        report, goodvibes::ReferenceTargets(),
        include_groups ? goodvibes::ComparisonScope::kAll
                       : goodvibes::ComparisonScope::kScenarios);
    if (report_text != nullptr) {
      *report_text = CopyString(goodvibes::FormatReportTable(report, comparison));
    }
    if (report_json != nullptr) {
      *report_json =
          CopyString(goodvibes::ReportToJson(report, comparison).dump(2));
    }
    if (all_passed != nullptr) *all_passed = comparison.all_passed() ? 1 : 0;
  });
}

gv_status gv_service_create(const gv_config* config, const char* log_path,
                            int recover, gv_service** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    config->config.Validate();
    auto service = std::make_unique<gv_service>();
    if (recover) {
      RequireNonNull(log_path, "log_path");
      service->session = goodvibes::LiveSession::Recover(config->config, log_path);
    } else {
      std::optional<std::filesystem::path> path;
      if (log_path != nullptr) path = log_path;
      service->session =
          std::make_unique<goodvibes::LiveSession>(config->config, path);
    }
    *out = service.release();
  });
}

void gv_service_free(gv_service* service) {
  if (service == nullptr) return;
  if (service->http) service->http->Stop();
  delete service;
}

gv_status gv_service_submit(gv_service* service, const char* command_json,
                            char** response_json) {
  return Guard([&] {
    RequireNonNull(service, "service");
    RequireNonNull(command_json, "command_json");
    RequireNonNull(response_json, "response_json");
    goodvibes::CommandOutcome outcome;
    try {
      outcome = service->session->Submit(goodvibes::ConsoleCommand::FromJson(
          nlohmann::json::parse(command_json)));
    } catch (const nlohmann::json::exception& e) {
      goodvibes::Throw(goodvibes::ErrorCode::kInvalidCommand,
                       std::string("malformed JSON: ") + e.what());
    }
    *response_json = CopyString(outcome.ToJson().dump());
  });
}

gv_status gv_service_snapshot(gv_service* service, char** out) {
  return Guard([&] {
    RequireNonNull(service, "service");
    RequireNonNull(out, "out");
    *out = CopyString(service->session->Snapshot().dump());
  });
}

gv_status gv_service_bind(gv_service* service, const char* host, int port,
                          int* bound_port) {
  return Guard([&] {
    RequireNonNull(service, "service");
    RequireNonNull(host, "host");
    if (!service->http) {
      service->http = std::make_unique<goodvibes::HttpService>(*service->session);
    }
    const int bound = service->http->Bind(host, port);
    if (bound_port != nullptr) *bound_port = bound;
  });
}

gv_status gv_service_serve(gv_service* service) {
  return Guard([&] {
    RequireNonNull(service, "service");
    if (!service->http) {
      goodvibes::Throw(goodvibes::ErrorCode::kInvalidArgument,
                       "gv_service_bind must be called first");
    }
    service->http->Serve();
  });
}

void gv_service_stop(gv_service* service) {
  if (service != nullptr && service->http) service->http->Stop();
}

}  // extern "C"
