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

#ifndef CENTERGUARD_RESOURCE_BROKER_H_
#define CENTERGUARD_RESOURCE_BROKER_H_

#include <cstdint>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "centerguard/device_state.h"
#include "centerguard/policy.h"
#include "centerguard/pseudo_value.h"
#include "centerguard/sim_clock.h"

namespace centerguard {

struct ResourceRequest {
  std::string app;
  ResourceKey resource;
};

enum class Provenance { kRealDevice, kPseudoInjected };

std::string_view ProvenanceName(Provenance p);

// What the requesting app sees: the value, or a permission-denied error.
// Carries nothing that tells real and pseudo data apart.
struct AppResult {
  std::optional<ResourceValue> value;

  bool denied() const { return !value.has_value(); }
  bool operator==(const AppResult&) const = default;
};

nlohmann::json AppResultToJson(const AppResult& r);

// Broker-side outcome. Denied responses have neither value nor provenance.
class ResourceResponse {
 public:
  static ResourceResponse Granted(ResourceValue v, Provenance p) {
    return ResourceResponse(std::move(v), p);
  }
  static ResourceResponse Denied() { return ResourceResponse(std::nullopt, std::nullopt); }

  bool granted() const { return value_.has_value(); }
  const std::optional<ResourceValue>& value() const { return value_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  AppResult app_view() const { return AppResult{value_}; }

 private:
  ResourceResponse(std::optional<ResourceValue> v, std::optional<Provenance> p)
      : value_(std::move(v)), provenance_(p) {}

  std::optional<ResourceValue> value_;
  std::optional<Provenance> provenance_;
};

struct AuditRecord {
  Instant timestamp;
  std::uint64_t sequence = 0;
  std::string app;
  ResourceKey resource;
  ModeTag mode;
  std::optional<Provenance> provenance;
  std::string digest;   // SHA-256 of the returned value's display form
  std::string preview;  // masked prefix, never the full value
};

nlohmann::json AuditRecordToJson(const AuditRecord& r);

struct AuditFilter {
  std::optional<std::string> app;
  std::optional<Permission> permission;
};

// Reads the device's true value for |key|. Camera and microphone reads
// consume a capture.
ResourceValue ReadGroundTruth(DeviceState& device, const ResourceKey& key);

// The interposition point between apps and device resources. One broker
// per device; calls are serialized and each appends exactly one audit
// record atomically with producing its response.
class ResourceBroker {
 public:
  ResourceBroker() = default;
  ResourceBroker(const ResourceBroker&) = delete;
  ResourceBroker& operator=(const ResourceBroker&) = delete;

  // Throws kUnknownApp if the app is not installed, kUnknownPermission if
  // the app never requested the permission.
  ResourceResponse Mediate(DeviceState& device, const ResourceRequest& request, Instant now);

  // Snapshot in append order.
  std::vector<AuditRecord> AuditLog(const AuditFilter& filter = {}) const;
  size_t AuditSize() const;

  // One JSON object per line.
  void ExportAudit(std::ostream& out) const;

 private:
  mutable std::mutex mu_;
  std::vector<AuditRecord> log_;
  std::uint64_t next_sequence_ = 1;
};

}  // namespace centerguard

#endif  // CENTERGUARD_RESOURCE_BROKER_H_
