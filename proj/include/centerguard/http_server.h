/*
 * Copyright (C) 2026 The CenterGuard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CENTERGUARD_HTTP_SERVER_H_
#define CENTERGUARD_HTTP_SERVER_H_

#include <memory>
#include <optional>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace centerguard {

class CloudService;
class Collector;

// A bound HTTP listener. Bind first, then either Serve() on the calling
// thread or Start() a background thread; Stop() is safe from any thread.
class HttpServer {
 public:
  HttpServer();
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Throws Error(kPortInUse).
  int Bind(const std::string& host, int port);
  void Serve();
  void Start();
  void Stop();

  int port() const { return port_; }
  httplib::Server& raw() { return *server_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

// Admin endpoints require the X-Admin-Token header when |admin_token| is set.
std::unique_ptr<HttpServer> MakeCloudServer(CloudService& cloud,
                                            std::optional<std::string> admin_token);

std::unique_ptr<HttpServer> MakeCollectorServer(Collector& collector);

}  // namespace centerguard

#endif  // CENTERGUARD_HTTP_SERVER_H_
