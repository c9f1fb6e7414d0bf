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

#include "centerguard/resource_broker.h"

#include <fmt/format.h>

#include "centerguard/digest.h"
#include "centerguard/errors.h"

namespace centerguard {
namespace {

constexpr size_t kPreviewChars = 3;

std::string Preview(const std::string& display) {
  if (display.size() <= kPreviewChars) return std::string(display.size(), '*');
  return display.substr(0, kPreviewChars) + "***";
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kRealDevice ? "RealDevice" : "PseudoInjected";
}

nlohmann::json AppResultToJson(const AppResult& r) {
  if (r.denied()) return {{"error", "PermissionDenied"}};
  return {{"value", ValueToJson(*r.value)}};
}

nlohmann::json AuditRecordToJson(const AuditRecord& r) {
  return {{"timestamp", FormatTimestamp(r.timestamp)},
          {"sequence", r.sequence},
          {"app", r.app},
          {"resource", r.resource.Name()},
          {"mode", std::string(ModeTagName(r.mode))},
          {"provenance", r.provenance ? nlohmann::json(std::string(ProvenanceName(*r.provenance)))
                                      : nlohmann::json(nullptr)},
          {"digest", r.digest},
          {"preview", r.preview}};
}

ResourceValue ReadGroundTruth(DeviceState& device, const ResourceKey& key) {
  switch (key.permission) {
    case Permission::kLocation: return device.location;
    case Permission::kDeviceId:
    case Permission::kPhoneState: return device.imei;
    case Permission::kStorage: return device.address;
    case Permission::kNetwork:
      switch (key.detail) {
        case Detail::kMac: return device.mac;
        case Detail::kIp: return device.ip;
        default: return ConnectionState{device.connection != ConnectionType::kNone};
      }
    case Permission::kCamera:
      return MediaToken{fmt::format("photo:{}", ++device.captures)};
    case Permission::kMicrophone:
      return MediaToken{fmt::format("audio:{}", ++device.captures)};
    case Permission::kContacts:
      return MediaToken{fmt::format("contacts:{}", device.contacts.size())};
  }
  throw Error(ErrorCode::kUnknownPermission, "unreadable resource " + key.Name());
}

ResourceResponse ResourceBroker::Mediate(DeviceState& device, const ResourceRequest& request,
                                         Instant now) {
  std::lock_guard lock(mu_);
  const AppManifest* app = device.FindApp(request.app);
  if (!app) throw Error(ErrorCode::kUnknownApp, "app not installed: " + request.app);
  const ResourceKey key = ResourceKey::Normalized(request.resource.permission, request.resource.detail);
  if (!app->Requests(key.permission)) {
    throw Error(ErrorCode::kUnknownPermission,
                request.app + " did not request " + std::string(PermissionName(key.permission)));
  }

  PermissionMode mode = ResolveMode(device.FindPolicy(request.app), key.permission, device.default_mode);
  std::optional<ResourceResponse> response;
  switch (mode.tag()) {
    case ModeTag::kReal:
      response = ResourceResponse::Granted(ReadGroundTruth(device, key), Provenance::kRealDevice);
      break;
    case ModeTag::kPseudo:
      response = ResourceResponse::Granted(InjectedValue(mode, key, device.pseudo_config),
                                           Provenance::kPseudoInjected);
      break;
    case ModeTag::kBlock:
      response = ResourceResponse::Denied();
      break;
  }

  AuditRecord record{now, next_sequence_++, request.app, key, mode.tag(), response->provenance(), "", ""};
  if (response->granted()) {
    std::string display = DisplayValue(*response->value());
    record.digest = Sha256Hex(display);
    record.preview = Preview(display);
  }
  log_.push_back(std::move(record));
  return *std::move(response);
}

std::vector<AuditRecord> ResourceBroker::AuditLog(const AuditFilter& filter) const {
  std::lock_guard lock(mu_);
  std::vector<AuditRecord> out;
  for (const auto& r : log_) {
    if (filter.app && r.app != *filter.app) continue;
    if (filter.permission && r.resource.permission != *filter.permission) continue;
    out.push_back(r);
  }
  return out;
}

size_t ResourceBroker::AuditSize() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

void ResourceBroker::ExportAudit(std::ostream& out) const {
  for (const auto& r : AuditLog()) out << AuditRecordToJson(r).dump() << '\n';
}

}  // namespace centerguard
