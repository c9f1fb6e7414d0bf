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

#include "centerguard/device.h"

#include <fmt/format.h>

#include "centerguard/errors.h"

namespace centerguard {

nlohmann::json SyncReportToJson(const SyncReport& r) {
  nlohmann::json filed = nlohmann::json::array();
  for (const auto& c : r.consultations_filed) {
    filed.push_back({{"id", c.id}, {"package", c.package}, {"status", std::string(StatusName(c.status))}});
  }
  return {{"applied", r.applied},
          {"consultations_filed", filed},
          {"unsynced", r.unsynced},
          {"cloud_unreachable", r.cloud_unreachable},
          {"elapsed_seconds", r.elapsed.count()}};
}

std::string_view BackupOutcomeName(BackupOutcome o) {
  switch (o) {
    case BackupOutcome::kUploaded: return "Uploaded";
    case BackupOutcome::kSkippedNetworkGate: return "SkippedNetworkGate";
    case BackupOutcome::kNotDue: return "NotDue";
  }
  return "";
}

Device::Device(DeviceState state, std::shared_ptr<Clock> clock, DeviceOptions options)
    : state_(std::move(state)),
      imei_(state_.imei.digits),
      clock_(std::move(clock)),
      options_(options),
      next_backup_at_(NextDailySlot(clock_->Now(), options_.backup_time)) {}

DeviceState Device::Snapshot() const {
  std::lock_guard lock(mu_);
  return state_;
}

Instant Device::next_backup_at() const {
  std::lock_guard lock(mu_);
  return next_backup_at_;
}

std::vector<std::string> Device::SurfacedNotifications() const {
  std::lock_guard lock(mu_);
  return surfaced_;
}

const AppManifest& Device::RequireInstalled(const std::string& package) const {
  const AppManifest* app = state_.FindApp(package);
  if (!app) throw Error(ErrorCode::kNotInstalled, "not installed: " + package);
  return *app;
}

InstallReport Device::InstallApp(const AppManifest& manifest) {
  ValidateManifest(manifest);
  std::lock_guard lock(mu_);
  if (state_.FindApp(manifest.package)) {
    throw Error(ErrorCode::kAlreadyInstalled, "already installed: " + manifest.package);
  }
  state_.installed.push_back(manifest);
  InstallReport report{manifest.package, manifest.UnusedPermissions(), false};
  if (state_.mode == DeviceMode::kAdvanced) {
    state_.policy_store[manifest.package] =
        EffectivePolicy(nullptr, manifest.package, manifest.version, manifest.requested_permissions,
                        PermissionMode::Real());
  } else {
    report.queued_for_sync = true;
  }
  return report;
}

void Device::SetMode(DeviceMode mode) {
  std::lock_guard lock(mu_);
  state_.mode = mode;
}

void Device::SetConnection(ConnectionType connection) {
  std::lock_guard lock(mu_);
  state_.connection = connection;
}

void Device::SetWifiOnlyBackup(bool wifi_only) {
  std::lock_guard lock(mu_);
  state_.wifi_only_backup = wifi_only;
}

void Device::MoveTo(GeoPoint location) {
  std::lock_guard lock(mu_);
  state_.location = location;
}

void Device::SetPseudoValue(const ResourceKey& key, const ResourceValue& value) {
  if (!IsPseudoCapable(key.permission)) {
    throw Error(ErrorCode::kNotPseudoCapable, key.Name() + " has no pseudo representation");
  }
  if (KindOf(value) != KindForResource(key)) {
    throw Error(ErrorCode::kInvalidValue, key.Name() + " expects a " +
                                              std::string(ValueKindName(KindForResource(key))) + " value");
  }
  std::lock_guard lock(mu_);
  state_.pseudo_config[key] = value;
}

void Device::SetPermissionManual(const std::string& package, Permission permission,
                                 const PermissionMode& mode, bool override_autopilot) {
  ValidateMode(permission, mode);
  std::lock_guard lock(mu_);
  const AppManifest& app = RequireInstalled(package);
  if (state_.mode == DeviceMode::kAutopilot && !override_autopilot) {
    throw Error(ErrorCode::kValidationError, "device is in Autopilot mode; manual edits need an override");
  }
  if (!app.Requests(permission)) {
    throw Error(ErrorCode::kUnknownPermission,
                package + " does not request " + std::string(PermissionName(permission)));
  }
  auto& policy = state_.policy_store[package];
  if (policy.package.empty()) {
    policy = EffectivePolicy(nullptr, app.package, app.version, app.requested_permissions,
                             state_.default_mode);
  }
  policy.entries.insert_or_assign(permission, mode);
}

void Device::ApplyPolicyLocked(const AppManifest& app, const AppPolicy& policy) {
  AppPolicy effective = EffectivePolicy(&policy, app.package, app.version,
                                        app.requested_permissions, state_.default_mode);
  ValidatePolicy(effective);
  state_.policy_store[app.package] = std::move(effective);
}

DeviceRegistration Device::RegisterWith(CloudApi& cloud) {
  std::lock_guard lock(mu_);
  if (state_.connection == ConnectionType::kNone) {
    throw Error(ErrorCode::kCloudUnreachable, "device has no connection");
  }
  return cloud.RegisterDevice(imei_, state_.mode);
}

SyncReport Device::AutopilotSync(CloudApi& cloud) {
  std::lock_guard lock(mu_);
  if (state_.mode != DeviceMode::kAutopilot) {
    throw Error(ErrorCode::kValidationError, "autopilot sync requires Autopilot mode");
  }
  SyncReport report;
  const Instant started = clock_->Now();
  size_t next = 0;
  try {
    if (state_.connection == ConnectionType::kNone) {
      throw Error(ErrorCode::kCloudUnreachable, "device has no connection");
    }
    for (; next < state_.installed.size(); ++next) {
      const AppManifest& app = state_.installed[next];
      if (auto record = cloud.GetPolicy(app.package, std::nullopt)) {
        ApplyPolicyLocked(app, record->policy);
        clock_->Advance(options_.apply_delay);
        report.applied.push_back(app.package);
      } else {
        report.consultations_filed.push_back(cloud.SubmitConsultation(
            {imei_, app.app_name, app.package, app.version, app.ContentHash(), app}));
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCloudUnreachable) throw;
    report.cloud_unreachable = true;
    for (; next < state_.installed.size(); ++next) report.unsynced.push_back(state_.installed[next].package);
  }
  report.elapsed = clock_->Now() - started;
  return report;
}

BackupPayload Device::MakeBackup() const {
  std::lock_guard lock(mu_);
  return BackupPayload{imei_, clock_->Now(), state_.policy_store, state_.pseudo_config};
}

BackupOutcome Device::BackupTick(CloudApi& cloud, Instant now) {
  clock_->AdvanceTo(now);
  std::lock_guard lock(mu_);
  now = clock_->Now();
  if (now < next_backup_at_) return BackupOutcome::kNotDue;
  if (state_.wifi_only_backup && state_.connection != ConnectionType::kWifi) {
    next_backup_at_ = NextDailySlot(now + Seconds{1}, options_.backup_time);
    return BackupOutcome::kSkippedNetworkGate;
  }
  if (state_.connection == ConnectionType::kNone) {
    throw Error(ErrorCode::kCloudUnreachable, "device has no connection; backup deferred");
  }
  cloud.StoreBackup(imei_, BackupPayload{imei_, now, state_.policy_store, state_.pseudo_config});
  next_backup_at_ = NextDailySlot(now + Seconds{1}, options_.backup_time);
  return BackupOutcome::kUploaded;
}

void Device::ApplyPushedPolicy(const std::string& package, const AppPolicy& policy) {
  std::lock_guard lock(mu_);
  const AppManifest& app = RequireInstalled(package);
  ApplyPolicyLocked(app, policy);
  surfaced_.push_back(app.app_name + " is ready and safe to use");
}

PollReport Device::PollAndApply(CloudApi& cloud) {
  std::uint64_t cursor;
  {
    std::lock_guard lock(mu_);
    if (state_.connection == ConnectionType::kNone) {
      throw Error(ErrorCode::kCloudUnreachable, "device has no connection");
    }
    cursor = notification_cursor_;
  }
  PollReport report;
  report.received = cloud.PollNotifications(imei_, cursor);
  for (const auto& n : report.received) {
    const std::string id = n.payload.value("consultation_id", "");
    if (n.kind == NotificationKind::kSettingsPush) {
      const std::string package = n.payload.value("package", "");
      try {
        ApplyPushedPolicy(package, PolicyFromJson(n.payload.at("policy")));
        report.applied_packages.push_back(package);
        if (!id.empty()) {
          try {
            cloud.MarkApplied(id);
          } catch (const Error& e) {
            // Redelivered push for a consultation already closed.
            if (e.code() != ErrorCode::kInvalidTransition) throw;
          }
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotInstalled) throw;
        report.rejected_packages.push_back(package);
        if (!id.empty()) cloud.RejectPush(id, e.what());
      }
    } else {
      std::lock_guard lock(mu_);
      surfaced_.push_back(n.payload.value("text", ""));
    }
    std::lock_guard lock(mu_);
    notification_cursor_ = std::max(notification_cursor_, n.sequence);
  }
  return report;
}

void Device::RestoreBackup(const BackupPayload& payload) {
  std::lock_guard lock(mu_);
  if (payload.imei != imei_) {
    throw Error(ErrorCode::kValidationError, "backup belongs to " + payload.imei);
  }
  for (const auto& [package, policy] : payload.policies) RequireInstalled(package);
  state_.policy_store = payload.policies;
  state_.pseudo_config = payload.pseudo_config;
}

ResourceResponse Device::Mediate(const ResourceRequest& request) {
  std::lock_guard lock(mu_);
  return broker_.Mediate(state_, request, clock_->Now());
}

std::vector<AuditRecord> Device::AuditLog(const AuditFilter& filter) const {
  return broker_.AuditLog(filter);
}

PrivacyScore Device::Score(const RiskWeightTable& weights) const {
  std::lock_guard lock(mu_);
  std::vector<AppProtection> apps;
  for (const auto& app : state_.installed) {
    apps.push_back({app.requested_permissions,
                    EffectivePolicy(state_.FindPolicy(app.package), app.package, app.version,
                                    app.requested_permissions, state_.default_mode)});
  }
  return ComputePrivacyScore(apps, weights);
}

}  // namespace centerguard
