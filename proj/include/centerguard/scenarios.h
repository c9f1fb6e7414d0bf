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

#ifndef CENTERGUARD_SCENARIOS_H_
#define CENTERGUARD_SCENARIOS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/app_runtime.h"
#include "centerguard/collector.h"
#include "centerguard/device.h"

namespace centerguard {

// ---- Simple Torch exfiltration scenario -----------------------------------

enum class TorchProtection { kNone, kPseudoLocation, kPseudoLocationAndImei, kFullBlockCamera };

std::string_view TorchProtectionName(TorchProtection p);
std::optional<TorchProtection> TorchProtectionFromName(std::string_view name);

// Values the protections inject.
GeoPoint TorchPseudoLocation();   // (-8.40917331462806, 115.18873499272713)
Imei TorchPseudoImei();           // "123456"
Instant TorchScenarioStart();     // 2014-08-08 10:00:00

// A device with the Torch app installed (Advanced mode, all Real) and an
// in-process collector, on its own virtual clock. Each execution moves the
// device to the next GPS fix, advances the clock one minute and runs Torch.
class TorchScenario {
 public:
  TorchScenario(DeviceFixture device, AppManifest torch, Instant start = TorchScenarioStart());

  // Protections accumulate: PseudoLocationAndImei implies PseudoLocation.
  void Protect(TorchProtection protection);
  void Execute(int executions);

  std::vector<CollectorRow> Rows() const { return collector_.Rows(); }
  std::vector<CollectorRow> NewestFirst() const { return collector_.NewestFirst(); }
  Device& device() { return *device_; }
  const AppManifest& torch() const { return torch_; }

 private:
  std::shared_ptr<VirtualClock> clock_;
  std::unique_ptr<Device> device_;
  AppManifest torch_;
  std::vector<GeoPoint> track_;
  size_t executed_ = 0;
  Collector collector_;
};

// Applies |protection| up front, then runs |executions| times. Rows are in
// arrival order.
std::vector<CollectorRow> RunTorchScenario(const DeviceFixture& device, const AppManifest& torch,
                                           TorchProtection protection, int executions);

// ---- Maps scenario ---------------------------------------------------------

// Sets the device's pseudo LOCATION to |pseudo_location| (when given), runs
// the browser app |package| and returns the location it displayed; nullopt
// when the app was denied.
std::optional<GeoPoint> RunMapsScenario(Device& device, const std::string& package,
                                        std::optional<GeoPoint> pseudo_location);

// ---- Leakage probe ---------------------------------------------------------

struct LeakageConfig {
  std::map<Permission, PermissionMode> modes;  // applied as manual settings
  PseudoConfig pseudo_values;                  // written to the device
};

LeakageConfig LeakageConfigFromJson(const nlohmann::json& j);
nlohmann::json LeakageConfigToJson(const LeakageConfig& c);

// What the probe app observed, by report field. nullopt = denied.
struct ProbeReport {
  std::optional<std::string> imei;
  std::optional<std::string> location;
  std::optional<std::string> mac;
  std::optional<std::string> ip;
  std::optional<std::string> address;
  std::optional<std::string> connection;

  bool operator==(const ProbeReport&) const = default;
};

nlohmann::json ProbeReportToJson(const ProbeReport& r);
ProbeReport ProbeReportFromJson(const nlohmann::json& j);

// The report field each probed resource fills.
const std::vector<std::pair<std::string, ResourceKey>>& ProbeFields();

// Applies |config| to the probe app |package| on |device|, runs it and
// returns its report.
ProbeReport RunLeakageProbe(Device& device, const std::string& package, const LeakageConfig& config);

}  // namespace centerguard

#endif  // CENTERGUARD_SCENARIOS_H_
