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

#include "goodvibes/http_service.h"

#include <httplib.h>

#include "goodvibes/error.h"

namespace goodvibes {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidCommand:
    case ErrorCode::kEmptyPattern:
    case ErrorCode::kInvalidToken:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kInternal:
    case ErrorCode::kIo:
      return 500;
    default:
      return 409;
  }
}

uint64_t SinceParam(const httplib::Request& req) {
  if (!req.has_param("since")) return 0;
  try {
    return std::stoull(req.get_param_value("since"));
  } catch (...) {
    return 0;
  }
}

std::string SseFrame(const json& event) {
  std::string frame = "id: " + std::to_string(event["seq"].get<uint64_t>()) + "\n";
  frame += "event: " + event["event"].get<std::string>() + "\n";
  frame += "data: " + event.dump() + "\n\n";
  return frame;
}

}  // namespace

HttpService::HttpService(LiveSession& session)
    : session_(session), server_(std::make_unique<httplib::Server>()) {
  RegisterRoutes();
}

HttpService::~HttpService() { Stop(); }

void HttpService::RegisterRoutes() {
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server_->Get("/api/session", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(session_.Snapshot().dump(), kJson);
  });

  server_->Get("/api/schedule", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(session_.ScheduleExport(), "text/plain");
  });

  server_->Get("/api/log", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(session_.Log().Serialize(), "application/x-ndjson");
  });

  server_->Post("/api/commands", [this](const httplib::Request& req,
                                        httplib::Response& res) {
    CommandOutcome outcome;
    try {
      json body = json::parse(req.body);
      ConsoleCommand command = ConsoleCommand::FromJson(body);
      // Time is assigned by the session, never by the client.
      command.issued_at_ms.reset();
      outcome = session_.Submit(std::move(command));
    } catch (const json::exception& e) {
      outcome.ok = false;
      outcome.error = ErrorCode::kInvalidCommand;
      outcome.message = std::string("malformed JSON: ") + e.what();
    } catch (const Error& e) {
      outcome.ok = false;
      outcome.error = e.code();
      outcome.message = e.what();
    }
    res.status = outcome.ok ? 200 : StatusFor(outcome.error);
    res.set_content(outcome.ToJson().dump(), kJson);
  });

  server_->Get("/api/events.json", [this](const httplib::Request& req,
                                          httplib::Response& res) {
    res.set_content(json(session_.EventsSince(SinceParam(req))).dump(), kJson);
  });

  server_->Get("/api/events", [this](const httplib::Request& req,
                                     httplib::Response& res) {
    auto cursor = std::make_shared<uint64_t>(SinceParam(req));
    if (req.has_header("Last-Event-ID")) {
      try {
        *cursor = std::stoull(req.get_header_value("Last-Event-ID")) + 1;
      } catch (...) {
      }
    }
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream",
        [this, cursor](size_t, httplib::DataSink& sink) {
          if (stopping_) {
            sink.done();
            return true;
          }
          std::vector<json> events = session_.WaitForEvents(
              *cursor, std::chrono::milliseconds(250));
          for (const json& event : events) {
            const std::string frame = SseFrame(event);
            if (!sink.write(frame.data(), frame.size())) return false;
            *cursor = event["seq"].get<uint64_t>() + 1;
          }
          if (events.empty()) {
            static constexpr char kKeepAlive[] = ": keep-alive\n\n";
            if (!sink.write(kKeepAlive, sizeof(kKeepAlive) - 1)) return false;
            if (session_.ended() &&
                session_.EventsSince(*cursor).empty()) {
              sink.done();
            }
          }
          return true;
        });
  });
}

int HttpService::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    Throw(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpService::Serve() { server_->listen_after_bind(); }

void HttpService::Stop() {
  stopping_ = true;
  if (server_) server_->stop();
}

}  // namespace goodvibes
