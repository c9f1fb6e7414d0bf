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

#include "centerguard/collector.h"

#include <algorithm>

#include "cloud/http_common.h"
#include "centerguard/errors.h"
#include "centerguard/http_server.h"
#include "centerguard/pseudo_value.h"

namespace centerguard {
namespace {

using nlohmann::json;

json OptionalNumber(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json OptionalText(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> NumberField(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number()) throw Error(ErrorCode::kValidationError, std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::optional<std::string> TextField(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

}  // namespace

json CollectorPostToJson(const CollectorPost& p) {
  return {{"imei", p.imei},
          {"latitude", OptionalNumber(p.latitude)},
          {"longitude", OptionalNumber(p.longitude)},
          {"photo", OptionalText(p.photo)},
          {"info", OptionalText(p.info)}};
}

CollectorPost CollectorPostFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kValidationError, "collector post must be an object");
  return {j.value("imei", ""), NumberField(j, "latitude"), NumberField(j, "longitude"),
          TextField(j, "photo"), TextField(j, "info")};
}

json CollectorRowToJson(const CollectorRow& r) {
  json j = CollectorPostToJson({r.imei, r.latitude, r.longitude, r.photo, r.info});
  j["date"] = r.date;
  return j;
}

CollectorRow CollectorRowFromJson(const json& j) {
  CollectorPost p = CollectorPostFromJson(j);
  return {p.imei, p.latitude, p.longitude, p.photo, p.info, j.value("date", "")};
}

std::string RenderCollectorTable(const std::vector<CollectorRow>& chronological) {
  std::string out = "IMEI\tLatitude\tLongitude\tPhoto\tInfo\tDate\n";
  for (auto it = chronological.rbegin(); it != chronological.rend(); ++it) {
    out += it->imei + '\t' + (it->latitude ? FormatCoordinate(*it->latitude) : "") + '\t' +
           (it->longitude ? FormatCoordinate(*it->longitude) : "") + '\t' + it->photo.value_or("") +
           '\t' + it->info.value_or("") + '\t' + it->date + '\n';
  }
  return out;
}

void Collector::Post(const CollectorPost& post) { Append(post); }

CollectorRow Collector::Append(const CollectorPost& post) {
  CollectorRow row{post.imei, post.latitude, post.longitude, post.photo, post.info,
                   FormatCollectorDate(clock_->Now())};
  std::lock_guard lock(mu_);
  rows_.push_back(row);
  return row;
}

std::vector<CollectorRow> Collector::Rows() const {
  std::lock_guard lock(mu_);
  return rows_;
}

std::vector<CollectorRow> Collector::NewestFirst() const {
  auto rows = Rows();
  std::reverse(rows.begin(), rows.end());
  return rows;
}

size_t Collector::size() const {
  std::lock_guard lock(mu_);
  return rows_.size();
}

std::unique_ptr<HttpServer> MakeCollectorServer(Collector& collector) {
  auto server = std::make_unique<HttpServer>();
  httplib::Server& svr = server->raw();
  svr.Post("/collect", [&collector](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      return CollectorRowToJson(collector.Append(CollectorPostFromJson(http::BodyJson(req))));
    });
  });
  svr.Get("/collect", [&collector](const httplib::Request& req, httplib::Response& res) {
    if (req.get_param_value("format") == "text") {
      res.set_content(RenderCollectorTable(collector.Rows()), "text/plain");
      return;
    }
    http::Guarded(res, [&] {
      json rows = json::array();
      for (const auto& r : collector.NewestFirst()) rows.push_back(CollectorRowToJson(r));
      return json{{"columns", {"IMEI", "Latitude", "Longitude", "Photo", "Info", "Date"}}, {"rows", rows}};
    });
  });
  return server;
}

HttpCollectorClient::HttpCollectorClient(const std::string& base_url)
    : client_(std::make_unique<httplib::Client>(base_url)) {
  client_->set_connection_timeout(2);
}

HttpCollectorClient::~HttpCollectorClient() = default;

void HttpCollectorClient::Post(const CollectorPost& post) {
  std::lock_guard lock(mu_);
  http::CheckReply(client_->Post("/collect", CollectorPostToJson(post).dump(), http::kJson), "POST /collect");
}

std::vector<CollectorRow> HttpCollectorClient::FetchNewestFirst() {
  std::lock_guard lock(mu_);
  json body = http::CheckReply(client_->Get("/collect"), "GET /collect");
  std::vector<CollectorRow> rows;
  for (const auto& r : body.at("rows")) rows.push_back(CollectorRowFromJson(r));
  return rows;
}

}  // namespace centerguard
