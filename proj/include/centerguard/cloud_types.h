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

#ifndef CENTERGUARD_CLOUD_TYPES_H_
#define CENTERGUARD_CLOUD_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/device_state.h"
#include "centerguard/manifest.h"
#include "centerguard/policy.h"
#include "centerguard/privacy_score.h"
#include "centerguard/sim_clock.h"

namespace centerguard {

// Consultation lifecycle, strictly in this order.
enum class ConsultationStatus { kNotSent, kUnderReview, kDecided, kPushed, kApplied };

std::string_view StatusName(ConsultationStatus s);         // "NotSent"
std::string_view StatusDisplayName(ConsultationStatus s);  // "Not Sent"
std::optional<ConsultationStatus> StatusFromName(std::string_view name);  // either form
// Only single forward steps are legal.
bool IsValidTransition(ConsultationStatus from, ConsultationStatus to);

struct StatusChange {
  ConsultationStatus status;
  Instant at;

  bool operator==(const StatusChange&) const = default;
};

struct Consultation {
  std::string id;
  std::string app_name;
  std::string package;
  std::string version;
  std::string imei;
  ConsultationStatus status = ConsultationStatus::kNotSent;
  std::string apk_ref;
  Instant created_date;
  std::optional<AppPolicy> decision;
  std::optional<AppManifest> manifest;
  std::optional<std::string> nack_reason;
  std::vector<StatusChange> history;

  bool operator==(const Consultation&) const = default;
};

nlohmann::json ConsultationToJson(const Consultation& c);
Consultation ConsultationFromJson(const nlohmann::json& j);

struct ConsultationRequest {
  std::string imei;
  std::string app_name;
  std::string package;
  std::string version;
  std::string apk_ref;
  std::optional<AppManifest> manifest;
};

nlohmann::json ConsultationRequestToJson(const ConsultationRequest& r);
ConsultationRequest ConsultationRequestFromJson(const nlohmann::json& j);

enum class NotificationKind { kSettingsPush, kMessage };

std::string_view NotificationKindName(NotificationKind k);

struct Notification {
  std::string target_imei;
  NotificationKind kind;
  nlohmann::json payload;
  bool delivered = false;
  std::uint64_t sequence = 0;

  bool operator==(const Notification&) const = default;
};

nlohmann::json NotificationToJson(const Notification& n);
Notification NotificationFromJson(const nlohmann::json& j);

struct PolicyRecord {
  std::string package;
  std::string version;
  AppPolicy policy;
  Instant moderated_at;
  std::uint64_t revision = 0;  // insertion order, breaks moderated_at ties

  bool operator==(const PolicyRecord&) const = default;
};

nlohmann::json PolicyRecordToJson(const PolicyRecord& r);
PolicyRecord PolicyRecordFromJson(const nlohmann::json& j);

struct DeviceRegistration {
  std::string imei;
  DeviceMode mode = DeviceMode::kAdvanced;
  Instant registered_at;
  std::optional<Instant> last_backup_at;

  bool operator==(const DeviceRegistration&) const = default;
};

nlohmann::json RegistrationToJson(const DeviceRegistration& r);
DeviceRegistration RegistrationFromJson(const nlohmann::json& j);

// Device-wide snapshot of enforcement state pushed to the cloud.
struct BackupPayload {
  std::string imei;
  Instant created_at;
  std::map<std::string, AppPolicy> policies;
  PseudoConfig pseudo_config;

  bool operator==(const BackupPayload&) const = default;
};

nlohmann::json BackupPayloadToJson(const BackupPayload& b);
BackupPayload BackupPayloadFromJson(const nlohmann::json& j);

struct BackupReceipt {
  std::string imei;
  std::uint64_t version = 0;
  Instant stored_at;
};

nlohmann::json BackupReceiptToJson(const BackupReceipt& r);
BackupReceipt BackupReceiptFromJson(const nlohmann::json& j);

struct DeviceSummary {
  DeviceRegistration registration;
  PrivacyScore score;
};

nlohmann::json DeviceSummaryToJson(const DeviceSummary& s);
DeviceSummary DeviceSummaryFromJson(const nlohmann::json& j);

}  // namespace centerguard

#endif  // CENTERGUARD_CLOUD_TYPES_H_
