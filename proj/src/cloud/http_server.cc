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

#include "centerguard/http_server.h"

#include "httplib.h"

#include "centerguard/errors.h"

namespace centerguard {

HttpServer::HttpServer() : server_(std::make_unique<httplib::Server>()) {
  // The library default adds SO_REUSEPORT, which lets a second server share
  // a port that is already serving; only allow rebinding TIME_WAIT ports.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ <= 0) throw Error(ErrorCode::kPortInUse, "could not bind any port on " + host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      throw Error(ErrorCode::kPortInUse, "port " + std::to_string(port) + " is in use on " + host);
    }
    port_ = port;
  }
  return port_;
}

void HttpServer::Serve() { server_->listen_after_bind(); }

void HttpServer::Start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace centerguard
