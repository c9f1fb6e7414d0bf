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

#ifndef CENTERGUARD_CLOUD_API_H_
#define CENTERGUARD_CLOUD_API_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centerguard/cloud_types.h"

namespace centerguard {

// The cloud decision service as seen by devices and the admin tooling.
// Implemented in-process by CloudService and over HTTP by HttpCloudClient;
// both raise Error with the same codes.
class CloudApi {
 public:
  virtual ~CloudApi() = default;

  virtual DeviceRegistration RegisterDevice(std::string_view imei, DeviceMode mode) = 0;
  // nullopt means "not in the knowledge base": file a consultation.
  virtual std::optional<PolicyRecord> GetPolicy(std::string_view package,
                                                std::optional<std::string> version) = 0;

  virtual Consultation SubmitConsultation(const ConsultationRequest& request) = 0;
  virtual std::vector<Consultation> ListConsultations(std::optional<ConsultationStatus> status) = 0;
  virtual Consultation MarkUnderReview(std::string_view id) = 0;
  virtual Consultation AdminDecide(std::string_view id, const AppPolicy& policy) = 0;
  virtual Consultation MarkApplied(std::string_view id) = 0;
  virtual Consultation RejectPush(std::string_view id, std::string_view reason) = 0;

  virtual std::vector<Notification> PollNotifications(std::string_view imei,
                                                      std::uint64_t after_sequence) = 0;
  virtual Notification PushMessage(std::string_view imei, std::string_view text) = 0;

  virtual BackupReceipt StoreBackup(std::string_view imei, const BackupPayload& payload) = 0;
  virtual BackupPayload FetchBackup(std::string_view imei) = 0;

  virtual std::vector<DeviceSummary> FleetSummary() = 0;
};

}  // namespace centerguard

#endif  // CENTERGUARD_CLOUD_API_H_
