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

#include "centerguard/scenarios.h"

#include "centerguard/errors.h"

namespace centerguard {

std::string_view TorchProtectionName(TorchProtection p) {
  switch (p) {
    case TorchProtection::kNone: return "None";
    case TorchProtection::kPseudoLocation: return "PseudoLocation";
    case TorchProtection::kPseudoLocationAndImei: return "PseudoLocationAndImei";
    case TorchProtection::kFullBlockCamera: return "FullBlockCamera";
  }
  return "";
}

std::optional<TorchProtection> TorchProtectionFromName(std::string_view name) {
  for (auto p : {TorchProtection::kNone, TorchProtection::kPseudoLocation,
                 TorchProtection::kPseudoLocationAndImei, TorchProtection::kFullBlockCamera}) {
    if (TorchProtectionName(p) == name) return p;
  }
  return std::nullopt;
}

GeoPoint TorchPseudoLocation() { return GeoPoint::Make(-8.40917331462806, 115.18873499272713); }
Imei TorchPseudoImei() { return Imei::Parse("123456"); }
Instant TorchScenarioStart() { return *ParseTimestamp("2014-08-08 10:00:00"); }

TorchScenario::TorchScenario(DeviceFixture device, AppManifest torch, Instant start)
    : clock_(std::make_shared<VirtualClock>(start)),
      torch_(std::move(torch)),
      track_(std::move(device.gps_track)),
      collector_(clock_) {
  device.state.mode = DeviceMode::kAdvanced;
  device_ = std::make_unique<Device>(std::move(device.state), clock_);
  device_->InstallApp(torch_);
}

void TorchScenario::Protect(TorchProtection protection) {
  const std::string& pkg = torch_.package;
  switch (protection) {
    case TorchProtection::kNone:
      break;
    case TorchProtection::kPseudoLocationAndImei:
      device_->SetPermissionManual(pkg, Permission::kDeviceId, PermissionMode::Pseudo(TorchPseudoImei()));
      [[fallthrough]];
    case TorchProtection::kPseudoLocation:
      device_->SetPermissionManual(pkg, Permission::kLocation, PermissionMode::Pseudo(TorchPseudoLocation()));
      break;
    case TorchProtection::kFullBlockCamera:
      device_->SetPermissionManual(pkg, Permission::kCamera, PermissionMode::Block());
      break;
  }
}

void TorchScenario::Execute(int executions) {
  for (int i = 0; i < executions; ++i) {
    if (!track_.empty()) device_->MoveTo(track_[executed_ % track_.size()]);
    clock_->Advance(std::chrono::minutes{1});
    RunApp(*device_, torch_.package, &collector_);
    ++executed_;
  }
}

std::vector<CollectorRow> RunTorchScenario(const DeviceFixture& device, const AppManifest& torch,
                                           TorchProtection protection, int executions) {
  TorchScenario scenario(device, torch);
  scenario.Protect(protection);
  scenario.Execute(executions);
  return scenario.Rows();
}

std::optional<GeoPoint> RunMapsScenario(Device& device, const std::string& package,
                                        std::optional<GeoPoint> pseudo_location) {
  if (pseudo_location) device.SetPseudoValue(ResourceKey::Normalized(Permission::kLocation), *pseudo_location);
  AppRunReport run = RunApp(device, package, nullptr);
  for (const auto& [key, value] : run.displayed) {
    if (key.permission != Permission::kLocation) continue;
    if (!value) return std::nullopt;
    return std::get<GeoPoint>(*value);
  }
  return std::nullopt;
}

LeakageConfig LeakageConfigFromJson(const nlohmann::json& j) {
  LeakageConfig c;
  if (!j.is_object()) throw Error(ErrorCode::kValidationError, "leakage config must be an object");
  const nlohmann::json modes = j.value("modes", nlohmann::json::object());
  for (const auto& [name, mode] : modes.items()) {
    Permission p = ParsePermission(name);
    PermissionMode m = ModeFromJson(mode);
    ValidateMode(p, m);
    c.modes.insert_or_assign(p, m);
  }
  c.pseudo_values = PseudoConfigFromJson(j.value("pseudo_values", nlohmann::json::object()));
  return c;
}

nlohmann::json LeakageConfigToJson(const LeakageConfig& c) {
  nlohmann::json modes = nlohmann::json::object();
  for (const auto& [p, m] : c.modes) modes[std::string(PermissionName(p))] = ModeToJson(m);
  return {{"modes", modes}, {"pseudo_values", PseudoConfigToJson(c.pseudo_values)}};
}

const std::vector<std::pair<std::string, ResourceKey>>& ProbeFields() {
  static const std::vector<std::pair<std::string, ResourceKey>> fields = {
      {"imei", ResourceKey::Normalized(Permission::kDeviceId)},
      {"location", ResourceKey::Normalized(Permission::kLocation)},
      {"mac", ResourceKey::Normalized(Permission::kNetwork, Detail::kMac)},
      {"ip", ResourceKey::Normalized(Permission::kNetwork, Detail::kIp)},
      {"address", ResourceKey::Normalized(Permission::kStorage)},
      {"connection", ResourceKey::Normalized(Permission::kNetwork, Detail::kConnection)},
  };
  return fields;
}

namespace {

std::optional<std::string>* FieldOf(ProbeReport& r, std::string_view name) {
  if (name == "imei") return &r.imei;
  if (name == "location") return &r.location;
  if (name == "mac") return &r.mac;
  if (name == "ip") return &r.ip;
  if (name == "address") return &r.address;
  if (name == "connection") return &r.connection;
  return nullptr;
}

}  // namespace

nlohmann::json ProbeReportToJson(const ProbeReport& r) {
  nlohmann::json j = nlohmann::json::object();
  ProbeReport copy = r;
  for (const auto& [name, key] : ProbeFields()) {
    const auto& field = *FieldOf(copy, name);
    j[name] = field ? nlohmann::json(*field) : nlohmann::json();
  }
  return j;
}

ProbeReport ProbeReportFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kValidationError, "probe report must be an object");
  ProbeReport r;
  for (const auto& [name, key] : ProbeFields()) {
    if (j.contains(name) && !j.at(name).is_null()) *FieldOf(r, name) = j.at(name).get<std::string>();
  }
  return r;
}

ProbeReport RunLeakageProbe(Device& device, const std::string& package, const LeakageConfig& config) {
  for (const auto& [key, value] : config.pseudo_values) device.SetPseudoValue(key, value);
  for (const auto& [permission, mode] : config.modes) {
    device.SetPermissionManual(package, permission, mode, /*override_autopilot=*/true);
  }
  AppRunReport run = RunApp(device, package, nullptr);
  ProbeReport report;
  for (const auto& [name, key] : ProbeFields()) {
    auto it = run.probe.find(key.Name());
    if (it != run.probe.end() && !it->is_null()) *FieldOf(report, name) = it->get<std::string>();
  }
  return report;
}

}  // namespace centerguard
