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

#include "centerguard/device_state.h"

#include <algorithm>
#include <cctype>

#include "centerguard/errors.h"
#include "centerguard/json_io.h"

namespace centerguard {
namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

GeoPoint PointFromJson(const nlohmann::json& j) {
  return GeoPoint::Make(j.at("latitude").get<double>(), j.at("longitude").get<double>());
}

}  // namespace

std::string_view ConnectionTypeName(ConnectionType c) {
  switch (c) {
    case ConnectionType::kWifi: return "WIFI";
    case ConnectionType::kGprs: return "GPRS";
    case ConnectionType::kNone: return "NONE";
  }
  return "";
}

std::optional<ConnectionType> ConnectionTypeFromName(std::string_view name) {
  std::string u = Upper(name);
  if (u == "WIFI") return ConnectionType::kWifi;
  if (u == "GPRS") return ConnectionType::kGprs;
  if (u == "NONE") return ConnectionType::kNone;
  return std::nullopt;
}

std::string_view DeviceModeName(DeviceMode m) {
  return m == DeviceMode::kAutopilot ? "Autopilot" : "Advanced";
}

std::optional<DeviceMode> DeviceModeFromName(std::string_view name) {
  std::string u = Upper(name);
  if (u == "AUTOPILOT" || u == "EASY") return DeviceMode::kAutopilot;
  if (u == "ADVANCED") return DeviceMode::kAdvanced;
  return std::nullopt;
}

const AppManifest* DeviceState::FindApp(std::string_view package) const {
  for (const auto& m : installed) {
    if (m.package == package) return &m;
  }
  return nullptr;
}

const AppPolicy* DeviceState::FindPolicy(std::string_view package) const {
  auto it = policy_store.find(std::string(package));
  return it == policy_store.end() ? nullptr : &it->second;
}

DeviceFixture DeviceFixtureFromJson(const nlohmann::json& j) {
  DeviceFixture fx;
  DeviceState& d = fx.state;
  try {
    std::string imei = j.at("imei").get<std::string>();
    if (imei.size() != 15 || !Imei::IsValid(imei)) {
      throw Error(ErrorCode::kMalformedImei, "device IMEI must be exactly 15 digits: " + imei);
    }
    d.imei = Imei{imei};
    d.location = PointFromJson(j.at("location"));
    d.mac = MacAddress::Parse(j.at("mac").get<std::string>());
    d.ip = IpAddress::Parse(j.at("ip").get<std::string>());
    d.address = StreetAddress{j.value("address", "")};
    if (j.contains("connection")) {
      auto c = ConnectionTypeFromName(j["connection"].get<std::string>());
      if (!c) throw Error(ErrorCode::kValidationError, "bad connection type");
      d.connection = *c;
    }
    d.wifi_only_backup = j.value("wifi_only_backup", false);
    if (j.contains("mode")) {
      auto m = DeviceModeFromName(j["mode"].get<std::string>());
      if (!m) throw Error(ErrorCode::kValidationError, "bad device mode");
      d.mode = *m;
    }
    d.contacts = j.value("contacts", std::vector<std::string>{});
    if (j.contains("pseudo_config")) d.pseudo_config = PseudoConfigFromJson(j["pseudo_config"]);
    for (const auto& p : j.value("gps_track", nlohmann::json::array())) {
      fx.gps_track.push_back(PointFromJson(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidationError, std::string("bad device fixture: ") + e.what());
  }
  return fx;
}

DeviceFixture LoadDeviceFixture(const std::filesystem::path& path) {
  return DeviceFixtureFromJson(ReadJsonFile(path));
}

}  // namespace centerguard
