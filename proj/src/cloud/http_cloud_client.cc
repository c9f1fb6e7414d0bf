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

#include "centerguard/http_cloud_client.h"

#include "cloud/http_common.h"

namespace centerguard {
namespace {

using nlohmann::json;

template <class T, class F>
std::vector<T> ListOf(const json& j, F&& from_json) {
  std::vector<T> out;
  for (const auto& item : j) out.push_back(from_json(item));
  return out;
}

}  // namespace

HttpCloudClient::HttpCloudClient(const std::string& base_url, std::optional<std::string> admin_token)
    : client_(std::make_unique<httplib::Client>(base_url)), admin_token_(std::move(admin_token)) {
  client_->set_connection_timeout(2);
  client_->set_read_timeout(10);
}

HttpCloudClient::~HttpCloudClient() = default;

json HttpCloudClient::Get(const std::string& path) {
  std::lock_guard lock(mu_);
  httplib::Headers headers;
  if (admin_token_) headers.emplace(http::kAdminTokenHeader, *admin_token_);
  return http::CheckReply(client_->Get(path, headers), "GET " + path);
}

json HttpCloudClient::Post(const std::string& path, const json& body) {
  std::lock_guard lock(mu_);
  httplib::Headers headers;
  if (admin_token_) headers.emplace(http::kAdminTokenHeader, *admin_token_);
  return http::CheckReply(client_->Post(path, headers, body.dump(), http::kJson), "POST " + path);
}

DeviceRegistration HttpCloudClient::RegisterDevice(std::string_view imei, DeviceMode mode) {
  return RegistrationFromJson(
      Post("/devices", {{"imei", std::string(imei)}, {"mode", std::string(DeviceModeName(mode))}}));
}

std::optional<PolicyRecord> HttpCloudClient::GetPolicy(std::string_view package,
                                                       std::optional<std::string> version) {
  std::string path = "/policies/" + httplib::detail::encode_url(std::string(package));
  if (version) path += "?version=" + httplib::detail::encode_url(*version);
  try {
    return PolicyRecordFromJson(Get(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotFound) return std::nullopt;
    throw;
  }
}

Consultation HttpCloudClient::SubmitConsultation(const ConsultationRequest& request) {
  return ConsultationFromJson(Post("/consultations", ConsultationRequestToJson(request)));
}

std::vector<Consultation> HttpCloudClient::ListConsultations(std::optional<ConsultationStatus> status) {
  std::string path = "/consultations";
  if (status) path += "?status=" + std::string(StatusName(*status));
  return ListOf<Consultation>(Get(path), ConsultationFromJson);
}

Consultation HttpCloudClient::GetConsultation(std::string_view id) {
  return ConsultationFromJson(Get("/consultations/" + std::string(id)));
}

Consultation HttpCloudClient::MarkUnderReview(std::string_view id) {
  return ConsultationFromJson(Post("/consultations/" + std::string(id) + "/review", json::object()));
}

Consultation HttpCloudClient::AdminDecide(std::string_view id, const AppPolicy& policy) {
  return ConsultationFromJson(
      Post("/consultations/" + std::string(id) + "/decision", {{"policy", PolicyToJson(policy)}}));
}

Consultation HttpCloudClient::MarkApplied(std::string_view id) {
  return ConsultationFromJson(Post("/consultations/" + std::string(id) + "/applied", json::object()));
}

Consultation HttpCloudClient::RejectPush(std::string_view id, std::string_view reason) {
  return ConsultationFromJson(
      Post("/consultations/" + std::string(id) + "/nack", {{"reason", std::string(reason)}}));
}

std::vector<Notification> HttpCloudClient::PollNotifications(std::string_view imei,
                                                             std::uint64_t after_sequence) {
  return ListOf<Notification>(
      Get("/notifications/" + std::string(imei) + "?after=" + std::to_string(after_sequence)),
      NotificationFromJson);
}

Notification HttpCloudClient::PushMessage(std::string_view imei, std::string_view text) {
  return NotificationFromJson(Post("/notifications/" + std::string(imei), {{"text", std::string(text)}}));
}

BackupReceipt HttpCloudClient::StoreBackup(std::string_view imei, const BackupPayload& payload) {
  return BackupReceiptFromJson(
      Post("/backups/" + std::string(imei), {{"payload", BackupPayloadToJson(payload)}}));
}

BackupPayload HttpCloudClient::FetchBackup(std::string_view imei) {
  return BackupPayloadFromJson(Get("/backups/" + std::string(imei) + "/latest"));
}

std::vector<DeviceSummary> HttpCloudClient::FleetSummary() {
  return ListOf<DeviceSummary>(Get("/devices"), DeviceSummaryFromJson);
}

}  // namespace centerguard
