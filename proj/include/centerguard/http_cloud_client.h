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

#ifndef CENTERGUARD_HTTP_CLOUD_CLIENT_H_
#define CENTERGUARD_HTTP_CLOUD_CLIENT_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "centerguard/cloud_api.h"

namespace httplib {
class Client;
}

namespace centerguard {

// CloudApi over the HTTP/JSON wire contract. Transport failures raise
// Error(kCloudUnreachable); error replies are mapped back to their codes.
class HttpCloudClient : public CloudApi {
 public:
  explicit HttpCloudClient(const std::string& base_url,
                           std::optional<std::string> admin_token = std::nullopt);
  ~HttpCloudClient() override;

  DeviceRegistration RegisterDevice(std::string_view imei, DeviceMode mode) override;
  std::optional<PolicyRecord> GetPolicy(std::string_view package,
                                        std::optional<std::string> version) override;
  Consultation SubmitConsultation(const ConsultationRequest& request) override;
  std::vector<Consultation> ListConsultations(std::optional<ConsultationStatus> status) override;
  Consultation MarkUnderReview(std::string_view id) override;
  Consultation AdminDecide(std::string_view id, const AppPolicy& policy) override;
  Consultation MarkApplied(std::string_view id) override;
  Consultation RejectPush(std::string_view id, std::string_view reason) override;
  std::vector<Notification> PollNotifications(std::string_view imei,
                                              std::uint64_t after_sequence) override;
  Notification PushMessage(std::string_view imei, std::string_view text) override;
  BackupReceipt StoreBackup(std::string_view imei, const BackupPayload& payload) override;
  BackupPayload FetchBackup(std::string_view imei) override;
  std::vector<DeviceSummary> FleetSummary() override;

  Consultation GetConsultation(std::string_view id);

 private:
  nlohmann::json Get(const std::string& path);
  nlohmann::json Post(const std::string& path, const nlohmann::json& body);

  std::mutex mu_;
  std::unique_ptr<httplib::Client> client_;
  std::optional<std::string> admin_token_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_HTTP_CLOUD_CLIENT_H_
