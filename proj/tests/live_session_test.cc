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

#include "goodvibes/live_session.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

ConsoleCommand Cmd(const json& j) { return ConsoleCommand::FromJson(j); }

class LiveSessionTest : public ::testing::Test {
 protected:
  LiveSessionTest()
      : log_path_(fs::temp_directory_path() /
                  ("goodvibes_live_" + std::to_string(::getpid()) + "_" +
                   ::testing::UnitTest::GetInstance()->current_test_info()->name() +
                   ".jsonl")) {}
  ~LiveSessionTest() override { fs::remove(log_path_); }

  LiveSession::Clock TestClock() {
    return [this] { return now_ += 250; };
  }

  std::string ReadLog() const {
    std::ifstream in(log_path_, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Runs the whole schedule, answering each trial with its expected response.
  void RunAll(LiveSession& session) {
    ASSERT_TRUE(session.Submit(Cmd({{"kind", "start_session"}})).ok);
    const json snapshot = session.Snapshot();
    for (const json& entry : snapshot["schedule"]) {
      ASSERT_TRUE(session.Submit(Cmd({{"kind", "advance_trial"}})).ok);
      const ScenarioId id = ParseScenario(entry["scenario"].get<std::string>());
      ASSERT_TRUE(session
                      .Submit(Cmd({{"kind", "record_response"},
                                   {"response", ResponseName(ExpectedResponse(id))}}))
                      .ok);
    }
  }

  RunConfig config_;
  fs::path log_path_;
  int64_t now_ = 0;
};

TEST_F(LiveSessionTest, StartShowsFirstTrialPending) {
  LiveSession session(config_, log_path_, TestClock());
  EXPECT_EQ(session.Snapshot()["phase"], "idle");
  const CommandOutcome outcome = session.Submit(Cmd({{"kind", "start_session"}}));
  ASSERT_TRUE(outcome.ok);
  ASSERT_EQ(outcome.events.size(), 1u);
  EXPECT_EQ(outcome.events[0]["event"], "session_started");
  const json snapshot = session.Snapshot();
  EXPECT_EQ(snapshot["phase"], "running");
  EXPECT_EQ(snapshot["total_trials"], 24);
  EXPECT_EQ(snapshot["current_trial"]["trial"], 1);
  EXPECT_EQ(snapshot["current_trial"]["status"], "pending");
  for (const json& entry : snapshot["schedule"]) EXPECT_EQ(entry["status"], "pending");
}

TEST_F(LiveSessionTest, InjectEmitsFullTimeline) {
  LiveSession session(config_, log_path_, TestClock());
  session.Submit(Cmd({{"kind", "start_session"}}));
  const CommandOutcome outcome =
      session.Submit(Cmd({{"kind", "inject_vibration"}, {"pattern", "1 3"}}));
  ASSERT_TRUE(outcome.ok);
  ASSERT_EQ(outcome.events.size(), 1u);
  const json& event = outcome.events[0];
  EXPECT_EQ(event["event"], "vibration_emitted");
  EXPECT_EQ(event["data"]["total_ms"], 560);
  EXPECT_EQ(event["data"]["timeline"], "0+60,260+60,380+60,500+60");
  EXPECT_EQ(event["data"]["source"], "injected");
  EXPECT_EQ(session.EventsSince(0).size(), 2u);
}

TEST_F(LiveSessionTest, SecondResponseRejected) {
  LiveSession session(config_, log_path_, TestClock());
  session.Submit(Cmd({{"kind", "start_session"}}));
  session.Submit(Cmd({{"kind", "advance_trial"}}));
  EXPECT_TRUE(session.Submit(Cmd({{"kind", "record_response"}, {"response", "no_report"}})).ok);
  const CommandOutcome second =
      session.Submit(Cmd({{"kind", "record_response"}, {"response", "no_report"}}));
  EXPECT_FALSE(second.ok);
  EXPECT_EQ(second.error, ErrorCode::kResponseAlreadyRecorded);
  EXPECT_EQ(second.ToJson()["error"]["code"], "ResponseAlreadyRecorded");
  EXPECT_EQ(session.Log().records().size(), 1u);
  EXPECT_EQ(session.Snapshot()["schedule"][0]["status"], "done");
}

TEST_F(LiveSessionTest, StateErrorsAreStructured) {
  LiveSession session(config_, log_path_, TestClock());
  EXPECT_EQ(session.Submit(Cmd({{"kind", "advance_trial"}})).error,
            ErrorCode::kInvalidCommand);
  session.Submit(Cmd({{"kind", "start_session"}}));
  EXPECT_EQ(session.Submit(Cmd({{"kind", "record_response"}, {"response", "no_report"}})).error,
            ErrorCode::kInvalidCommand);
  session.Submit(Cmd({{"kind", "advance_trial"}}));
  const CommandOutcome early = session.Submit(Cmd({{"kind", "advance_trial"}}));
  EXPECT_FALSE(early.ok);
  EXPECT_EQ(early.error, ErrorCode::kInvalidCommand);
  EXPECT_TRUE(early.events.empty());
}

TEST_F(LiveSessionTest, MalformedCommandsRejected) {
  EXPECT_THROW(Cmd({{"kind", "explode"}}), Error);
  EXPECT_THROW(Cmd({{"kind", "inject_vibration"}}), Error);
  EXPECT_THROW(Cmd({{"kind", "inject_vibration"}, {"pattern", "0"}}), Error);
  EXPECT_THROW(Cmd({{"kind", "record_response"}, {"response", "maybe"}}), Error);
  EXPECT_THROW(Cmd(json::array()), Error);
}

TEST_F(LiveSessionTest, SuppressNextSwallowsAuthVibration) {
  LiveSession session(config_, log_path_, TestClock());
  session.Submit(Cmd({{"kind", "start_session"}}));
  // Find a trial whose scenario normally vibrates on wake.
  const json schedule = session.Snapshot()["schedule"];
  ASSERT_EQ(schedule[0]["status"], "pending");
  session.Submit(Cmd({{"kind", "suppress_next"}}));
  EXPECT_TRUE(session.Snapshot()["suppress_next"].get<bool>());
  const CommandOutcome outcome = session.Submit(Cmd({{"kind", "advance_trial"}}));
  ASSERT_TRUE(outcome.ok);
  EXPECT_FALSE(session.Snapshot()["suppress_next"].get<bool>());
  const std::string scenario = schedule[0]["scenario"];
  bool emitted_auth = false;
  for (const json& e : outcome.events) {
    if (e["event"] == "vibration_emitted" && e["data"]["source"] == "auth_ping") {
      emitted_auth = true;
    }
  }
  EXPECT_FALSE(emitted_auth) << scenario;
}

TEST_F(LiveSessionTest, FullSessionLogMatchesSimulatedSchema) {
  LiveSession session(config_, log_path_, TestClock());
  RunAll(session);
  const CommandOutcome end = session.Submit(Cmd({{"kind", "end_session"}}));
  ASSERT_TRUE(end.ok);
  EXPECT_TRUE(session.ended());
  const SessionLog log = ReadSessionLog(log_path_);
  EXPECT_EQ(log, session.Log());
  ASSERT_EQ(log.records().size(), 24u);
  EXPECT_EQ(log.header()->mode, "live");
  const AggregateReport report = Aggregate(std::span(&log, 1));
  EXPECT_EQ(report.overall, (RateCell{24, 24}));
  const json snapshot = session.Snapshot();
  EXPECT_EQ(snapshot["phase"], "ended");
  EXPECT_EQ(snapshot["completed_trials"], 24);
}

TEST_F(LiveSessionTest, RecoveryReplaysToSameState) {
  json before;
  std::string log_before;
  {
    LiveSession session(config_, log_path_, TestClock());
    session.Submit(Cmd({{"kind", "start_session"}}));
    session.Submit(Cmd({{"kind", "advance_trial"}}));
    session.Submit(Cmd({{"kind", "record_response"}, {"response", "no_report"}}));
    session.Submit(Cmd({{"kind", "record_response"}, {"response", "no_report"}}));
    session.Submit(Cmd({{"kind", "suppress_next"}}));
    session.Submit(Cmd({{"kind", "advance_trial"}}));
    session.Submit(Cmd({{"kind", "inject_vibration"}, {"pattern", "2 2"}}));
    before = session.Snapshot();
    log_before = ReadLog();
  }
  std::unique_ptr<LiveSession> recovered =
      LiveSession::Recover(config_, log_path_, TestClock());
  EXPECT_EQ(recovered->Snapshot(), before);
  EXPECT_EQ(ReadLog(), log_before);

  // The recovered session keeps appending to the same log.
  ASSERT_TRUE(recovered->Submit(Cmd({{"kind", "record_response"},
                                     {"response", "report_absent_or_wrong"}}))
                  .ok);
  EXPECT_EQ(ReadSessionLog(log_path_), recovered->Log());
  EXPECT_EQ(recovered->Log().records().size(), 2u);
}

TEST_F(LiveSessionTest, RecoveryRejectsForeignConfig) {
  {
    LiveSession session(config_, log_path_, TestClock());
    session.Submit(Cmd({{"kind", "start_session"}}));
  }
  RunConfig other = config_;
  other.seed += 1;
  try {
    LiveSession::Recover(other, log_path_, TestClock());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
}

TEST_F(LiveSessionTest, CommandsAndEventsInterleaveInReceiptOrder) {
  LiveSession session(config_, log_path_, TestClock());
  RunAll(session);
  int64_t last_issued = -1;
  uint64_t next_seq = 0;
  const SessionLog log = session.Log();
  for (const auto& a : log.annotations()) {
    if (a.line["type"] == "command") {
      ASSERT_GE(a.line["issued_at_ms"].get<int64_t>(), last_issued);
      last_issued = a.line["issued_at_ms"];
    } else {
      ASSERT_EQ(a.line["seq"].get<uint64_t>(), next_seq++);
    }
  }
  EXPECT_EQ(next_seq, session.EventsSince(0).size());
}

}  // namespace
}  // namespace goodvibes
