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

#ifndef GOODVIBES_HTTP_SERVICE_H_
#define GOODVIBES_HTTP_SERVICE_H_

#include <atomic>
#include <memory>
#include <string>

#include "goodvibes/live_session.h"

namespace httplib {
class Server;
}

namespace goodvibes {

// HTTP front end for a LiveSession; endpoints are described in
// docs/wire_protocol.md. The session must outlive the service.
class HttpService {
 public:
  explicit HttpService(LiveSession& session);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Returns the bound port; port 0 picks a free one. Throws kIo.
  int Bind(const std::string& host, int port);
  // Serves until Stop(). Call after Bind().
  void Serve();
  void Stop();

 private:
  void RegisterRoutes();

  LiveSession& session_;
  std::unique_ptr<httplib::Server> server_;
  std::atomic<bool> stopping_{false};
};

}  // namespace goodvibes

#endif  // GOODVIBES_HTTP_SERVICE_H_
