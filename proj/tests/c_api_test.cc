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

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <string>

#include <unistd.h>

namespace {

using nlohmann::json;

std::string Take(char* s) {
  std::string out = s == nullptr ? "" : s;
  gv_string_free(s);
  return out;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(gv_version(), "0.1.0");
  EXPECT_STREQ(gv_status_name(GV_OK), "Ok");
  EXPECT_STREQ(gv_status_name(GV_ERR_RESPONSE_ALREADY_RECORDED),
               "ResponseAlreadyRecorded");
}

TEST(CApiTest, RenderThroughHandles) {
  gv_pattern* pattern = nullptr;
  ASSERT_EQ(gv_pattern_parse("1 3", &pattern), GV_OK);
  gv_timeline* timeline = nullptr;
  ASSERT_EQ(gv_timeline_render(pattern, 60, 60, 200, &timeline), GV_OK);
  EXPECT_EQ(gv_timeline_total_ms(timeline), 560);
  ASSERT_EQ(gv_timeline_burst_count(timeline), 4u);
  int64_t start = 0, duration = 0;
  ASSERT_EQ(gv_timeline_burst(timeline, 1, &start, &duration), GV_OK);
  EXPECT_EQ(start, 260);
  EXPECT_EQ(duration, 60);
  EXPECT_EQ(gv_timeline_burst(timeline, 4, &start, &duration), GV_ERR_OUT_OF_RANGE);
  char* text = nullptr;
  ASSERT_EQ(gv_pattern_to_string(pattern, &text), GV_OK);
  EXPECT_EQ(Take(text), "1 3");
  gv_timeline_free(timeline);
  gv_pattern_free(pattern);
}

TEST(CApiTest, ErrorsCarryMessages) {
  gv_pattern* pattern = nullptr;
  EXPECT_EQ(gv_pattern_parse("", &pattern), GV_ERR_EMPTY_PATTERN);
  EXPECT_EQ(pattern, nullptr);
  EXPECT_EQ(gv_pattern_parse("0 2", &pattern), GV_ERR_OUT_OF_RANGE);
  EXPECT_NE(std::string(gv_last_error()).find("0"), std::string::npos);
  EXPECT_EQ(gv_pattern_parse("x", &pattern), GV_ERR_INVALID_TOKEN);
  EXPECT_EQ(gv_pattern_parse(nullptr, &pattern), GV_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(gv_pattern_parse("2", nullptr), GV_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, ConfigValidation) {
  gv_config* config = nullptr;
  ASSERT_EQ(gv_config_create(&config), GV_OK);
  EXPECT_EQ(gv_config_set(config, "participants", "0"), GV_OK);
  EXPECT_EQ(gv_config_validate(config), GV_ERR_INVALID_CONFIG);
  EXPECT_NE(gv_config_set(config, "bogus", "1"), GV_OK);
  EXPECT_EQ(gv_config_set(config, "participants", "2"), GV_OK);
  EXPECT_EQ(gv_config_validate(config), GV_OK);
  char* text = nullptr;
  ASSERT_EQ(gv_config_to_json(config, &text), GV_OK);
  EXPECT_EQ(json::parse(Take(text))["participants"], 2);
  gv_config_free(config);
}

TEST(CApiTest, ScheduleExport) {
  char* text = nullptr;
  ASSERT_EQ(gv_schedule_export(20240501, nullptr, &text), GV_OK);
  const std::string schedule = Take(text);
  EXPECT_EQ(std::count(schedule.begin(), schedule.end(), '\n'), 24);
  const int one[5] = {1, 0, 0, 0, 0};
  ASSERT_EQ(gv_schedule_export(3, one, &text), GV_OK);
  EXPECT_EQ(Take(text), "1 S1\n");
  const int negative[5] = {1, -1, 0, 0, 0};
  EXPECT_EQ(gv_schedule_export(3, negative, &text), GV_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, SimulationAndAggregation) {
  gv_config* config = nullptr;
  ASSERT_EQ(gv_config_create(&config), GV_OK);
  gv_simulation* sim = nullptr;
  ASSERT_EQ(gv_simulate(config, &sim), GV_OK);
  EXPECT_EQ(gv_simulation_record_count(sim), 720u);
  char* report = nullptr;
  ASSERT_EQ(gv_simulation_report_json(sim, &report), GV_OK);
  const json j = json::parse(Take(report));
  EXPECT_EQ(j["overall"]["total"], 720);

  const std::filesystem::path dir = std::filesystem::temp_directory_path() /
                                    ("goodvibes_capi_" + std::to_string(::getpid()));
  ASSERT_EQ(gv_simulation_write(sim, dir.c_str()), GV_OK);
  const std::string p1 = (dir / "sessions" / "P001.jsonl").string();
  const std::string p2 = (dir / "sessions" / "P002.jsonl").string();
  const char* paths[] = {p1.c_str(), p2.c_str()};
  char* text = nullptr;
  char* agg = nullptr;
  int passed = -1;
  ASSERT_EQ(gv_aggregate_logs(paths, 2, 0, &text, &agg, &passed), GV_OK);
  EXPECT_NE(Take(text).find("Sessions: 2, trials: 48"), std::string::npos);
  EXPECT_EQ(json::parse(Take(agg))["sessions"], 2);
  EXPECT_TRUE(passed == 0 || passed == 1);
  EXPECT_EQ(gv_aggregate_logs(paths, 0, 0, &text, &agg, nullptr), GV_ERR_EMPTY_INPUT);
  const char* missing[] = {"/nonexistent/log.jsonl"};
  EXPECT_EQ(gv_aggregate_logs(missing, 1, 0, &text, nullptr, nullptr), GV_ERR_IO);
  std::filesystem::remove_all(dir);
  gv_simulation_free(sim);
  gv_config_free(config);
}

TEST(CApiTest, ServiceSubmitAndRecover) {
  gv_config* config = nullptr;
  ASSERT_EQ(gv_config_create(&config), GV_OK);
  const std::string log = (std::filesystem::temp_directory_path() /
                           ("goodvibes_capi_" + std::to_string(::getpid()) + ".jsonl"))
                              .string();
  gv_service* service = nullptr;
  ASSERT_EQ(gv_service_create(config, log.c_str(), 0, &service), GV_OK);
  char* out = nullptr;
  ASSERT_EQ(gv_service_submit(service, R"({"kind":"start_session"})", &out), GV_OK);
  EXPECT_TRUE(json::parse(Take(out))["ok"].get<bool>());
  ASSERT_EQ(gv_service_submit(service, R"({"kind":"record_response","response":"no_report"})",
                              &out),
            GV_OK);
  const json rejected = json::parse(Take(out));
  EXPECT_FALSE(rejected["ok"].get<bool>());
  EXPECT_EQ(rejected["error"]["code"], "InvalidCommand");
  EXPECT_EQ(gv_service_submit(service, "{", &out), GV_ERR_INVALID_COMMAND);
  ASSERT_EQ(gv_service_snapshot(service, &out), GV_OK);
  const json before = json::parse(Take(out));
  gv_service_free(service);

  ASSERT_EQ(gv_service_create(config, log.c_str(), 1, &service), GV_OK);
  ASSERT_EQ(gv_service_snapshot(service, &out), GV_OK);
  EXPECT_EQ(json::parse(Take(out)), before);
  gv_service_free(service);
  std::filesystem::remove(log);
  gv_config_free(config);
}

}  // namespace
