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

#ifndef CENTERGUARD_DEVICE_H_
#define CENTERGUARD_DEVICE_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "centerguard/cloud_api.h"
#include "centerguard/device_state.h"
#include "centerguard/privacy_score.h"
#include "centerguard/resource_broker.h"
#include "centerguard/sim_clock.h"

namespace centerguard {

struct DeviceOptions {
  Seconds apply_delay{4};
  Seconds backup_time = std::chrono::hours{9};  // daily slot, time of day
};

struct InstallReport {
  std::string package;
  std::set<Permission> unused_permissions;  // requested but never needed
  bool queued_for_sync = false;

  bool over_privileged() const { return !unused_permissions.empty(); }
};

struct SyncReport {
  std::vector<std::string> applied;
  std::vector<Consultation> consultations_filed;
  std::vector<std::string> unsynced;  // non-empty only when the cloud dropped out
  bool cloud_unreachable = false;
  Seconds elapsed{0};
};

nlohmann::json SyncReportToJson(const SyncReport& r);

enum class BackupOutcome { kUploaded, kSkippedNetworkGate, kNotDue };

std::string_view BackupOutcomeName(BackupOutcome o);

struct PollReport {
  std::vector<Notification> received;
  std::vector<std::string> applied_packages;
  std::vector<std::string> rejected_packages;
};

// A simulated handset running the privacy agent. Operations run one at a
// time in call order; the clock only moves forward.
class Device {
 public:
  Device(DeviceState state, std::shared_ptr<Clock> clock, DeviceOptions options = {});

  Device(const Device&) = delete;
  Device& operator=(const Device&) = delete;

  DeviceState Snapshot() const;
  Instant Now() const { return clock_->Now(); }
  const std::string& imei() const { return imei_; }
  Instant next_backup_at() const;
  std::vector<std::string> SurfacedNotifications() const;

  // Throws kAlreadyInstalled / kUnknownPermission.
  InstallReport InstallApp(const AppManifest& manifest);
  void SetMode(DeviceMode mode);
  void SetConnection(ConnectionType connection);
  void SetWifiOnlyBackup(bool wifi_only);
  void MoveTo(GeoPoint location);
  void SetPseudoValue(const ResourceKey& key, const ResourceValue& value);

  // Requires Advanced mode unless |override_autopilot|. Takes effect on the
  // next mediated read. Throws kNotInstalled / kUnknownPermission.
  void SetPermissionManual(const std::string& package, Permission permission,
                           const PermissionMode& mode, bool override_autopilot = false);

  DeviceRegistration RegisterWith(CloudApi& cloud);
  // Requires Autopilot mode. Applies known policies in install order,
  // advancing the clock by apply_delay per app, and files consultations for
  // the rest.
  SyncReport AutopilotSync(CloudApi& cloud);
  // Throws kCloudUnreachable (schedule unchanged) when the upload fails.
  BackupOutcome BackupTick(CloudApi& cloud, Instant now);
  // Throws kNotInstalled.
  void ApplyPushedPolicy(const std::string& package, const AppPolicy& policy);
  // Fetches pending notifications, applies settings pushes (acknowledging
  // each to the cloud) and surfaces messages.
  PollReport PollAndApply(CloudApi& cloud);

  BackupPayload MakeBackup() const;
  // Throws kNotInstalled if the payload names an app not installed here.
  void RestoreBackup(const BackupPayload& payload);

  // Throws kUnknownApp / kUnknownPermission.
  ResourceResponse Mediate(const ResourceRequest& request);
  AppResult Request(const std::string& app, const ResourceKey& resource) {
    return Mediate({app, resource}).app_view();
  }
  std::vector<AuditRecord> AuditLog(const AuditFilter& filter = {}) const;
  void ExportAudit(std::ostream& out) const { broker_.ExportAudit(out); }

  PrivacyScore Score(const RiskWeightTable& weights) const;

 private:
  const AppManifest& RequireInstalled(const std::string& package) const;
  void ApplyPolicyLocked(const AppManifest& app, const AppPolicy& policy);

  mutable std::mutex mu_;
  DeviceState state_;
  std::string imei_;
  std::shared_ptr<Clock> clock_;
  DeviceOptions options_;
  ResourceBroker broker_;
  Instant next_backup_at_;
  std::uint64_t notification_cursor_ = 0;
  std::vector<std::string> surfaced_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_DEVICE_H_
