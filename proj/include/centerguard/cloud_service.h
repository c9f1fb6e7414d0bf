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

#ifndef CENTERGUARD_CLOUD_SERVICE_H_
#define CENTERGUARD_CLOUD_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "centerguard/cloud_api.h"
#include "centerguard/privacy_score.h"
#include "centerguard/record_store.h"
#include "centerguard/sim_clock.h"

namespace centerguard {

// The cloud decision and monitoring system: device registry, policy
// knowledge base, consultation queue, per-device notification queues and
// backup storage. With a store directory every mutation is persisted and
// the state is rebuilt from the log on construction.
class CloudService : public CloudApi {
 public:
  // Throws Error(kStoreCorrupt) when the store log does not replay.
  CloudService(std::shared_ptr<Clock> clock, std::optional<std::filesystem::path> store_dir,
               RiskWeightTable weights = RiskWeightTable::Default());

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
  // Seeds the knowledge base directly (fixtures, tests).
  PolicyRecord PutPolicy(const AppPolicy& policy);
  std::optional<DeviceRegistration> FindDevice(std::string_view imei);
  void Flush();

 private:
  struct BackupEntry {
    std::uint64_t version;
    Instant stored_at;
    nlohmann::json payload;
  };

  void Replay();
  void RequireRegistered(std::string_view imei) const;
  Consultation& FindConsultationLocked(std::string_view id);
  void Transition(Consultation& c, ConsultationStatus to);
  PolicyRecord PutPolicyLocked(const AppPolicy& policy);
  Notification EnqueueLocked(const std::string& imei, NotificationKind kind, nlohmann::json payload);
  void Persist(std::string_view table, const nlohmann::json& record);

  std::shared_ptr<Clock> clock_;
  std::unique_ptr<RecordStore> store_;
  RiskWeightTable weights_;

  std::mutex mu_;
  std::map<std::string, DeviceRegistration, std::less<>> devices_;
  std::map<std::string, std::map<std::string, PolicyRecord>, std::less<>> policies_;
  std::map<std::string, Consultation, std::less<>> consultations_;
  std::vector<std::string> consultation_order_;
  std::map<std::string, std::vector<Notification>, std::less<>> notifications_;
  std::map<std::string, std::vector<BackupEntry>, std::less<>> backups_;
  std::uint64_t next_consultation_ = 1;
  std::uint64_t next_policy_revision_ = 1;
};

}  // namespace centerguard

#endif  // CENTERGUARD_CLOUD_SERVICE_H_
