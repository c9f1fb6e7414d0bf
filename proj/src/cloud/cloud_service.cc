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

#include "centerguard/cloud_service.h"

#include <fmt/format.h>

#include <algorithm>

#include "centerguard/errors.h"

namespace centerguard {
namespace {

constexpr std::string_view kDevices = "devices";
constexpr std::string_view kPolicies = "policies";
constexpr std::string_view kConsultations = "consultations";
constexpr std::string_view kNotifications = "notifications";
constexpr std::string_view kBackups = "backups";

std::uint64_t ConsultationNumber(std::string_view id) {
  if (!id.starts_with("c-")) return 0;
  try {
    return std::stoull(std::string(id.substr(2)));
  } catch (...) {
    return 0;
  }
}

bool IsOpen(const Consultation& c) { return c.status != ConsultationStatus::kApplied; }

}  // namespace

CloudService::CloudService(std::shared_ptr<Clock> clock,
                           std::optional<std::filesystem::path> store_dir, RiskWeightTable weights)
    : clock_(std::move(clock)), weights_(std::move(weights)) {
  if (store_dir) {
    store_ = std::make_unique<RecordStore>(*store_dir);
    Replay();
  }
}

void CloudService::Replay() {
  for (const auto& j : store_->Load(kDevices)) {
    auto r = RegistrationFromJson(j);
    devices_.insert_or_assign(r.imei, r);
  }
  for (const auto& j : store_->Load(kPolicies)) {
    auto r = PolicyRecordFromJson(j);
    next_policy_revision_ = std::max(next_policy_revision_, r.revision + 1);
    policies_[r.package].insert_or_assign(r.version, r);
  }
  for (const auto& j : store_->Load(kConsultations)) {
    auto c = ConsultationFromJson(j);
    if (!consultations_.contains(c.id)) consultation_order_.push_back(c.id);
    next_consultation_ = std::max(next_consultation_, ConsultationNumber(c.id) + 1);
    consultations_.insert_or_assign(c.id, c);
  }
  for (const auto& j : store_->Load(kNotifications)) {
    auto n = NotificationFromJson(j);
    auto& queue = notifications_[n.target_imei];
    auto it = std::find_if(queue.begin(), queue.end(),
                           [&](const Notification& x) { return x.sequence == n.sequence; });
    if (it == queue.end()) {
      queue.push_back(n);
    } else {
      *it = n;
    }
  }
  for (auto& [imei, queue] : notifications_) {
    std::sort(queue.begin(), queue.end(),
              [](const Notification& a, const Notification& b) { return a.sequence < b.sequence; });
  }
  for (const auto& j : store_->Load(kBackups)) {
    try {
      backups_[j.at("imei").get<std::string>()].push_back(
          {j.at("version").get<std::uint64_t>(),
           ParseTimestamp(j.at("stored_at").get<std::string>()).value(), j.at("payload")});
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kStoreCorrupt, std::string("bad backup record: ") + e.what());
    }
  }
}

void CloudService::Persist(std::string_view table, const nlohmann::json& record) {
  if (store_) store_->Append(table, record);
}

void CloudService::Flush() {
  if (store_) store_->Flush();
}

void CloudService::RequireRegistered(std::string_view imei) const {
  if (!devices_.contains(imei)) {
    throw Error(ErrorCode::kUnregisteredDevice, "device not registered: " + std::string(imei));
  }
}

DeviceRegistration CloudService::RegisterDevice(std::string_view imei, DeviceMode mode) {
  if (!Imei::IsValid(imei)) {
    throw Error(ErrorCode::kMalformedImei, "IMEI must be 1-16 digits: '" + std::string(imei) + "'");
  }
  std::lock_guard lock(mu_);
  auto it = devices_.find(imei);
  if (it == devices_.end()) {
    it = devices_.emplace(std::string(imei), DeviceRegistration{std::string(imei), mode, clock_->Now(), {}})
             .first;
  } else {
    it->second.mode = mode;
  }
  Persist(kDevices, RegistrationToJson(it->second));
  return it->second;
}

std::optional<DeviceRegistration> CloudService::FindDevice(std::string_view imei) {
  std::lock_guard lock(mu_);
  auto it = devices_.find(imei);
  if (it == devices_.end()) return std::nullopt;
  return it->second;
}

std::optional<PolicyRecord> CloudService::GetPolicy(std::string_view package,
                                                    std::optional<std::string> version) {
  std::lock_guard lock(mu_);
  auto it = policies_.find(package);
  if (it == policies_.end() || it->second.empty()) return std::nullopt;
  if (version) {
    auto v = it->second.find(*version);
    if (v == it->second.end()) return std::nullopt;
    return v->second;
  }
  const PolicyRecord* latest = nullptr;
  for (const auto& [ver, rec] : it->second) {
    if (!latest || std::tie(rec.moderated_at, rec.revision) > std::tie(latest->moderated_at, latest->revision)) {
      latest = &rec;
    }
  }
  return *latest;
}

PolicyRecord CloudService::PutPolicyLocked(const AppPolicy& policy) {
  ValidatePolicy(policy);
  PolicyRecord rec{policy.package, policy.version, policy, clock_->Now(), next_policy_revision_++};
  policies_[policy.package].insert_or_assign(policy.version, rec);
  Persist(kPolicies, PolicyRecordToJson(rec));
  return rec;
}

PolicyRecord CloudService::PutPolicy(const AppPolicy& policy) {
  std::lock_guard lock(mu_);
  return PutPolicyLocked(policy);
}

Consultation CloudService::SubmitConsultation(const ConsultationRequest& request) {
  std::lock_guard lock(mu_);
  RequireRegistered(request.imei);
  if (request.package.empty()) throw Error(ErrorCode::kValidationError, "consultation needs a package");
  for (const auto& id : consultation_order_) {
    const auto& c = consultations_.at(id);
    if (c.package == request.package && c.imei == request.imei && IsOpen(c)) return c;
  }
  Consultation c;
  c.id = fmt::format("c-{:06d}", next_consultation_++);
  c.app_name = request.app_name;
  c.package = request.package;
  c.version = request.version;
  c.imei = request.imei;
  c.apk_ref = request.apk_ref.empty() && request.manifest ? request.manifest->ContentHash() : request.apk_ref;
  c.manifest = request.manifest;
  c.created_date = clock_->Now();
  c.history.push_back({ConsultationStatus::kNotSent, c.created_date});
  consultation_order_.push_back(c.id);
  consultations_.emplace(c.id, c);
  Persist(kConsultations, ConsultationToJson(c));
  return c;
}

std::vector<Consultation> CloudService::ListConsultations(std::optional<ConsultationStatus> status) {
  std::lock_guard lock(mu_);
  std::vector<Consultation> out;
  for (const auto& id : consultation_order_) {
    const auto& c = consultations_.at(id);
    if (!status || c.status == *status) out.push_back(c);
  }
  return out;
}

Consultation& CloudService::FindConsultationLocked(std::string_view id) {
  auto it = consultations_.find(id);
  if (it == consultations_.end()) {
    throw Error(ErrorCode::kNotFound, "no consultation " + std::string(id));
  }
  return it->second;
}

Consultation CloudService::GetConsultation(std::string_view id) {
  std::lock_guard lock(mu_);
  return FindConsultationLocked(id);
}

void CloudService::Transition(Consultation& c, ConsultationStatus to) {
  if (!IsValidTransition(c.status, to)) {
    throw Error(ErrorCode::kInvalidTransition,
                fmt::format("{}: {} -> {} is not allowed", c.id, StatusName(c.status), StatusName(to)));
  }
  c.status = to;
  c.history.push_back({to, clock_->Now()});
}

Consultation CloudService::MarkUnderReview(std::string_view id) {
  std::lock_guard lock(mu_);
  Consultation& c = FindConsultationLocked(id);
  Transition(c, ConsultationStatus::kUnderReview);
  Persist(kConsultations, ConsultationToJson(c));
  return c;
}

Consultation CloudService::AdminDecide(std::string_view id, const AppPolicy& policy) {
  std::lock_guard lock(mu_);
  Consultation& c = FindConsultationLocked(id);
  if (c.status >= ConsultationStatus::kDecided) {
    throw Error(ErrorCode::kAlreadyDecided, "consultation " + c.id + " is already decided");
  }
  AppPolicy decided = policy;
  if (decided.package.empty()) decided.package = c.package;
  if (decided.package != c.package) {
    throw Error(ErrorCode::kValidationError,
                "policy is for " + decided.package + " but consultation is for " + c.package);
  }
  if (decided.version.empty()) decided.version = c.version;
  ValidatePolicy(decided);
  if (c.manifest) ValidatePolicyCovers(decided, c.manifest->requested_permissions);

  // Validation is complete; nothing below may fail halfway.
  PutPolicyLocked(decided);
  if (c.status == ConsultationStatus::kNotSent) Transition(c, ConsultationStatus::kUnderReview);
  Transition(c, ConsultationStatus::kDecided);
  c.decision = decided;
  EnqueueLocked(c.imei, NotificationKind::kSettingsPush,
                {{"consultation_id", c.id}, {"package", c.package}, {"policy", PolicyToJson(decided)}});
  EnqueueLocked(c.imei, NotificationKind::kMessage,
                {{"consultation_id", c.id},
                 {"package", c.package},
                 {"text", c.app_name + " is ready and safe to use"}});
  Transition(c, ConsultationStatus::kPushed);
  Persist(kConsultations, ConsultationToJson(c));
  return c;
}

Consultation CloudService::MarkApplied(std::string_view id) {
  std::lock_guard lock(mu_);
  Consultation& c = FindConsultationLocked(id);
  Transition(c, ConsultationStatus::kApplied);
  Persist(kConsultations, ConsultationToJson(c));
  return c;
}

Consultation CloudService::RejectPush(std::string_view id, std::string_view reason) {
  std::lock_guard lock(mu_);
  Consultation& c = FindConsultationLocked(id);
  if (c.status != ConsultationStatus::kPushed) {
    throw Error(ErrorCode::kInvalidTransition, "only a pushed consultation can be rejected");
  }
  c.nack_reason = std::string(reason);
  Persist(kConsultations, ConsultationToJson(c));
  return c;
}

Notification CloudService::EnqueueLocked(const std::string& imei, NotificationKind kind,
                                         nlohmann::json payload) {
  auto& queue = notifications_[imei];
  Notification n{imei, kind, std::move(payload), false, queue.empty() ? 1 : queue.back().sequence + 1};
  queue.push_back(n);
  Persist(kNotifications, NotificationToJson(n));
  return n;
}

std::vector<Notification> CloudService::PollNotifications(std::string_view imei,
                                                          std::uint64_t after_sequence) {
  std::lock_guard lock(mu_);
  RequireRegistered(imei);
  std::vector<Notification> out;
  auto it = notifications_.find(imei);
  if (it == notifications_.end()) return out;
  for (auto& n : it->second) {
    if (n.sequence <= after_sequence) {
      if (!n.delivered) {
        n.delivered = true;
        Persist(kNotifications, NotificationToJson(n));
      }
    } else {
      out.push_back(n);
    }
  }
  return out;
}

Notification CloudService::PushMessage(std::string_view imei, std::string_view text) {
  std::lock_guard lock(mu_);
  RequireRegistered(imei);
  return EnqueueLocked(std::string(imei), NotificationKind::kMessage, {{"text", std::string(text)}});
}

BackupReceipt CloudService::StoreBackup(std::string_view imei, const BackupPayload& payload) {
  std::lock_guard lock(mu_);
  RequireRegistered(imei);
  if (payload.imei != imei) {
    throw Error(ErrorCode::kValidationError, "backup payload IMEI does not match " + std::string(imei));
  }
  auto& history = backups_[std::string(imei)];
  BackupEntry entry{history.empty() ? 1 : history.back().version + 1, clock_->Now(),
                    BackupPayloadToJson(payload)};
  history.push_back(entry);
  Persist(kBackups, {{"imei", std::string(imei)},
                     {"version", entry.version},
                     {"stored_at", FormatTimestamp(entry.stored_at)},
                     {"payload", entry.payload}});
  auto& reg = devices_.find(imei)->second;
  reg.last_backup_at = entry.stored_at;
  Persist(kDevices, RegistrationToJson(reg));
  return {std::string(imei), entry.version, entry.stored_at};
}

BackupPayload CloudService::FetchBackup(std::string_view imei) {
  std::lock_guard lock(mu_);
  RequireRegistered(imei);
  auto it = backups_.find(imei);
  if (it == backups_.end() || it->second.empty()) {
    throw Error(ErrorCode::kNoBackup, "no backup stored for " + std::string(imei));
  }
  return BackupPayloadFromJson(it->second.back().payload);
}

std::vector<DeviceSummary> CloudService::FleetSummary() {
  std::lock_guard lock(mu_);
  std::vector<DeviceSummary> out;
  for (const auto& [imei, reg] : devices_) {
    std::vector<AppProtection> apps;
    if (auto it = backups_.find(imei); it != backups_.end() && !it->second.empty()) {
      BackupPayload latest = BackupPayloadFromJson(it->second.back().payload);
      for (const auto& [pkg, policy] : latest.policies) {
        AppProtection app{{}, policy};
        for (const auto& [perm, mode] : policy.entries) app.requested.push_back(perm);
        apps.push_back(std::move(app));
      }
    }
    out.push_back({reg, ComputePrivacyScore(apps, weights_)});
  }
  return out;
}

}  // namespace centerguard
