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

/* C interface to the GoodVibes library. All objects are opaque handles
 * released with their matching *_free function. Functions return a
 * gv_status; on failure gv_last_error() describes the problem for the
 * calling thread. Strings returned through char** are heap-allocated and
 * must be released with gv_string_free(). */

#ifndef GOODVIBES_GOODVIBES_H_
#define GOODVIBES_GOODVIBES_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GV_BUILDING_LIBRARY)
#define GV_API __attribute__((visibility("default")))
#else
#define GV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors goodvibes::ErrorCode. */
typedef enum gv_status {
  GV_OK = 0,
  GV_ERR_EMPTY_PATTERN = 1,
  GV_ERR_INVALID_TOKEN = 2,
  GV_ERR_OUT_OF_RANGE = 3,
  GV_ERR_INVALID_TIMING = 4,
  GV_ERR_ALREADY_PAIRED = 5,
  GV_ERR_KIND_MISMATCH = 6,
  GV_ERR_COUNTER_REUSED = 7,
  GV_ERR_NOT_PAIRED = 8,
  GV_ERR_ALREADY_ENROLLED = 9,
  GV_ERR_NOT_ENROLLED = 10,
  GV_ERR_EMPTY_DISTRACTOR_POOL = 11,
  GV_ERR_WORLD_MISCONFIGURED = 12,
  GV_ERR_UNREACHABLE_TARGET = 13,
  GV_ERR_INDEX_GAP = 14,
  GV_ERR_HEADER_MISSING = 15,
  GV_ERR_EMPTY_INPUT = 16,
  GV_ERR_INVALID_CONFIG = 17,
  GV_ERR_INVALID_COMMAND = 18,
  GV_ERR_RESPONSE_ALREADY_RECORDED = 19,
  GV_ERR_IO = 20,
  GV_ERR_PARSE = 21,
  GV_ERR_INVALID_ARGUMENT = 22,
  GV_ERR_INTERNAL = 23
} gv_status;

typedef struct gv_pattern gv_pattern;
typedef struct gv_timeline gv_timeline;
typedef struct gv_config gv_config;
typedef struct gv_simulation gv_simulation;
typedef struct gv_service gv_service;

GV_API const char* gv_version(void);
GV_API const char* gv_status_name(gv_status status);
/* Message for the last failed call on this thread; "" if none. */
GV_API const char* gv_last_error(void);
GV_API void gv_string_free(char* s);

/* Patterns and timelines. */
GV_API gv_status gv_pattern_parse(const char* text, gv_pattern** out);
GV_API void gv_pattern_free(gv_pattern* pattern);
GV_API gv_status gv_pattern_to_string(const gv_pattern* pattern, char** out);
GV_API gv_status gv_timeline_render(const gv_pattern* pattern,
                                    int64_t burst_ms, int64_t intra_gap_ms,
                                    int64_t inter_gap_ms, gv_timeline** out);
GV_API void gv_timeline_free(gv_timeline* timeline);
GV_API size_t gv_timeline_burst_count(const gv_timeline* timeline);
GV_API gv_status gv_timeline_burst(const gv_timeline* timeline, size_t i,
                                   int64_t* start_ms, int64_t* duration_ms);
GV_API int64_t gv_timeline_total_ms(const gv_timeline* timeline);
/* "start+duration" pairs joined by commas. */
GV_API gv_status gv_timeline_to_string(const gv_timeline* timeline, char** out);

/* Run configuration. Keys are listed in docs/cli.md. */
GV_API gv_status gv_config_create(gv_config** out);
GV_API void gv_config_free(gv_config* config);
GV_API gv_status gv_config_set(gv_config* config, const char* key,
                               const char* value);
GV_API gv_status gv_config_validate(const gv_config* config);
GV_API gv_status gv_config_to_json(const gv_config* config, char** out);
GV_API gv_status gv_config_output_dir(const gv_config* config, char** out);

/* Schedules: one "<index> <scenario>" line per trial. `counts` holds S1..S5;
 * NULL means the study default 9,6,3,3,3. */
GV_API gv_status gv_schedule_export(uint64_t seed, const int* counts,
                                    char** out);
/* Schedule from a config's seed and counts. With participant >= 0, the
 * schedule that participant gets under the config's seed policy. */
GV_API gv_status gv_config_schedule_export(const gv_config* config,
                                           int participant, char** out);

/* Batch simulation. */
GV_API gv_status gv_simulate(const gv_config* config, gv_simulation** out);
GV_API void gv_simulation_free(gv_simulation* simulation);
GV_API size_t gv_simulation_record_count(const gv_simulation* simulation);
GV_API int gv_simulation_all_passed(const gv_simulation* simulation);
GV_API gv_status gv_simulation_write(const gv_simulation* simulation,
                                     const char* directory);
GV_API gv_status gv_simulation_report_text(const gv_simulation* simulation,
                                           char** out);
GV_API gv_status gv_simulation_report_json(const gv_simulation* simulation,
                                           char** out);

/* Aggregates existing session log files into a report. `all_passed` may be
 * NULL. */
GV_API gv_status gv_aggregate_logs(const char* const* paths, size_t count,
                                   int include_groups, char** report_text,
                                   char** report_json, int* all_passed);

/* Live session service. With `recover` nonzero the session is rebuilt from
 * the commands already in `log_path`. */
GV_API gv_status gv_service_create(const gv_config* config,
                                   const char* log_path, int recover,
                                   gv_service** out);
GV_API void gv_service_free(gv_service* service);
/* Applies a JSON command; `response_json` receives the outcome object. A
 * rejected command still returns GV_OK with {"ok": false, ...}. */
GV_API gv_status gv_service_submit(gv_service* service,
                                   const char* command_json,
                                   char** response_json);
GV_API gv_status gv_service_snapshot(gv_service* service, char** out);
/* Binds the HTTP endpoint; port 0 picks one, reported via `bound_port`. */
GV_API gv_status gv_service_bind(gv_service* service, const char* host,
                                 int port, int* bound_port);
/* Blocks serving requests until gv_service_stop(). */
GV_API gv_status gv_service_serve(gv_service* service);
GV_API void gv_service_stop(gv_service* service);

#ifdef __cplusplus
}
#endif

#endif /* GOODVIBES_GOODVIBES_H_ */
