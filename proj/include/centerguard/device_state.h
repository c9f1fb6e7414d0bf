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

#ifndef CENTERGUARD_DEVICE_STATE_H_
#define CENTERGUARD_DEVICE_STATE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/manifest.h"
#include "centerguard/policy.h"
#include "centerguard/pseudo_value.h"

namespace centerguard {

enum class ConnectionType { kWifi, kGprs, kNone };
enum class DeviceMode { kAutopilot, kAdvanced };

std::string_view ConnectionTypeName(ConnectionType c);
std::optional<ConnectionType> ConnectionTypeFromName(std::string_view name);  // case-insensitive
std::string_view DeviceModeName(DeviceMode m);
std::optional<DeviceMode> DeviceModeFromName(std::string_view name);  // case-insensitive

// Ground truth of one simulated handset plus its enforcement configuration.
struct DeviceState {
  Imei imei;
  GeoPoint location;
  MacAddress mac;
  IpAddress ip;
  StreetAddress address;
  ConnectionType connection = ConnectionType::kWifi;
  bool wifi_only_backup = false;
  DeviceMode mode = DeviceMode::kAdvanced;
  std::vector<std::string> contacts;

  std::vector<AppManifest> installed;            // install order
  std::map<std::string, AppPolicy> policy_store;  // keys are installed packages
  PseudoConfig pseudo_config;
  PermissionMode default_mode = PermissionMode::Real();

  std::uint64_t captures = 0;  // camera/microphone captures taken so far

  const AppManifest* FindApp(std::string_view package) const;
  const AppPolicy* FindPolicy(std::string_view package) const;
};

// A device fixture file: ground truth plus an optional GPS track replayed by
// scenarios, one fix per app execution.
struct DeviceFixture {
  DeviceState state;
  std::vector<GeoPoint> gps_track;
};

// Device ground-truth IMEI must be exactly 15 digits.
DeviceFixture DeviceFixtureFromJson(const nlohmann::json& j);
DeviceFixture LoadDeviceFixture(const std::filesystem::path& path);

}  // namespace centerguard

#endif  // CENTERGUARD_DEVICE_STATE_H_
