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

#ifndef CENTERGUARD_COLLECTOR_H_
#define CENTERGUARD_COLLECTOR_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "centerguard/sim_clock.h"

namespace httplib {
class Client;
}

namespace centerguard {

// What an exfiltrating app ships per execution.
struct CollectorPost {
  std::string imei;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> photo;
  std::optional<std::string> info;

  bool operator==(const CollectorPost&) const = default;
};

// One row of the adversary's backend table: IMEI, Latitude, Longitude,
// Photo, Info, Date ("DD / MM / YYYY").
struct CollectorRow {
  std::string imei;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> photo;
  std::optional<std::string> info;
  std::string date;

  bool operator==(const CollectorRow&) const = default;
};

nlohmann::json CollectorPostToJson(const CollectorPost& p);
CollectorPost CollectorPostFromJson(const nlohmann::json& j);
nlohmann::json CollectorRowToJson(const CollectorRow& r);
CollectorRow CollectorRowFromJson(const nlohmann::json& j);

// Renders rows newest first, tab-separated, with the table header.
std::string RenderCollectorTable(const std::vector<CollectorRow>& chronological);

class CollectorSink {
 public:
  virtual ~CollectorSink() = default;
  virtual void Post(const CollectorPost& post) = 0;
};

// In-repo stand-in for the test app authors' server.
class Collector : public CollectorSink {
 public:
  explicit Collector(std::shared_ptr<Clock> clock) : clock_(std::move(clock)) {}

  void Post(const CollectorPost& post) override;
  CollectorRow Append(const CollectorPost& post);
  std::vector<CollectorRow> Rows() const;        // arrival order
  std::vector<CollectorRow> NewestFirst() const;  // the figure layout
  size_t size() const;

 private:
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mu_;
  std::vector<CollectorRow> rows_;
};

// Posts to a remote collector's POST /collect.
class HttpCollectorClient : public CollectorSink {
 public:
  explicit HttpCollectorClient(const std::string& base_url);
  ~HttpCollectorClient() override;

  void Post(const CollectorPost& post) override;
  std::vector<CollectorRow> FetchNewestFirst();

 private:
  std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_COLLECTOR_H_
