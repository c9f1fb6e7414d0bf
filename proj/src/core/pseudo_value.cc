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

#include "centerguard/pseudo_value.h"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>

#include "centerguard/errors.h"

namespace centerguard {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidValue, what);
}

bool IsUpperHex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F');
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool Imei::IsValid(std::string_view text) {
  if (text.empty() || text.size() > 16) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Imei Imei::Parse(std::string_view text) {
  if (!IsValid(text)) Invalid("IMEI must be 1-16 decimal digits: '" + std::string(text) + "'");
  return Imei{std::string(text)};
}

GeoPoint GeoPoint::Make(double latitude, double longitude) {
  if (!std::isfinite(latitude) || latitude < -90.0 || latitude > 90.0) {
    Invalid(fmt::format("latitude out of range: {}", latitude));
  }
  if (!std::isfinite(longitude) || longitude < -180.0 || longitude > 180.0) {
    Invalid(fmt::format("longitude out of range: {}", longitude));
  }
  return GeoPoint{latitude, longitude};
}

bool MacAddress::IsValid(std::string_view text) {
  if (text.size() != 17) return false;
  for (size_t i = 0; i < text.size(); ++i) {
    if (i % 3 == 2) {
      if (text[i] != ':') return false;
    } else if (!IsUpperHex(text[i])) {
      return false;
    }
  }
  return true;
}

MacAddress MacAddress::Parse(std::string_view text) {
  if (!IsValid(text)) Invalid("MAC must be HH:HH:HH:HH:HH:HH uppercase: '" + std::string(text) + "'");
  return MacAddress{std::string(text)};
}

bool IpAddress::IsValid(std::string_view text) {
  int octets = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('.', pos);
    if (end == std::string_view::npos) end = text.size();
    auto part = text.substr(pos, end - pos);
    if (part.empty() || part.size() > 3) return false;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || value > 255) return false;
    ++octets;
    pos = end + 1;
    if (end == text.size()) break;
  }
  return octets == 4 && !text.ends_with('.');
}

IpAddress IpAddress::Parse(std::string_view text) {
  if (!IsValid(text)) Invalid("IP must be a dotted quad: '" + std::string(text) + "'");
  return IpAddress{std::string(text)};
}

ValueKind KindOf(const ResourceValue& v) {
  return std::visit(Overloaded{
                        [](const Imei&) { return ValueKind::kImei; },
                        [](const GeoPoint&) { return ValueKind::kLocation; },
                        [](const MacAddress&) { return ValueKind::kMac; },
                        [](const IpAddress&) { return ValueKind::kIp; },
                        [](const StreetAddress&) { return ValueKind::kAddress; },
                        [](const ConnectionState&) { return ValueKind::kConnection; },
                        [](const MediaToken&) { return ValueKind::kToken; },
                    },
                    v);
}

std::string_view ValueKindName(ValueKind k) {
  switch (k) {
    case ValueKind::kImei: return "imei";
    case ValueKind::kLocation: return "location";
    case ValueKind::kMac: return "mac";
    case ValueKind::kIp: return "ip";
    case ValueKind::kAddress: return "address";
    case ValueKind::kConnection: return "connection";
    case ValueKind::kToken: return "token";
  }
  return "";
}

ValueKind KindForResource(const ResourceKey& key) {
  switch (key.permission) {
    case Permission::kLocation: return ValueKind::kLocation;
    case Permission::kDeviceId:
    case Permission::kPhoneState: return ValueKind::kImei;
    case Permission::kStorage: return ValueKind::kAddress;
    case Permission::kNetwork:
      switch (key.detail) {
        case Detail::kMac: return ValueKind::kMac;
        case Detail::kIp: return ValueKind::kIp;
        default: return ValueKind::kConnection;
      }
    case Permission::kCamera:
    case Permission::kContacts:
    case Permission::kMicrophone: return ValueKind::kToken;
  }
  return ValueKind::kToken;
}

bool IsPseudoCapable(Permission p) {
  return p != Permission::kContacts && p != Permission::kMicrophone;
}

ResourceValue DefaultPseudoValue(const ResourceKey& key) {
  if (!IsPseudoCapable(key.permission)) {
    throw Error(ErrorCode::kNotPseudoCapable,
                std::string(PermissionName(key.permission)) + " has no pseudo representation");
  }
  if (key.permission == Permission::kCamera) {
    return MediaToken{std::string(kPlaceholderImage)};
  }
  switch (KindForResource(key)) {
    case ValueKind::kImei: return Imei{"000000000000000"};
    case ValueKind::kLocation: return GeoPoint{0.0, 0.0};
    case ValueKind::kMac: return MacAddress{"00:00:00:00:00:00"};
    case ValueKind::kIp: return IpAddress{"0.0.0.0"};
    case ValueKind::kAddress: return StreetAddress{""};
    case ValueKind::kConnection: return ConnectionState{true};
    case ValueKind::kToken: break;
  }
  return MediaToken{std::string(kPlaceholderImage)};
}

ResourceValue PseudoValueFor(const ResourceKey& key, const PseudoConfig& config) {
  if (!IsPseudoCapable(key.permission)) {
    throw Error(ErrorCode::kNotPseudoCapable,
                std::string(PermissionName(key.permission)) + " has no pseudo representation");
  }
  if (auto it = config.find(key); it != config.end()) return it->second;
  return DefaultPseudoValue(key);
}

std::string FormatCoordinate(double degrees) { return fmt::format("{}", degrees); }

std::string DisplayValue(const ResourceValue& v) {
  return std::visit(
      Overloaded{
          [](const Imei& x) { return x.digits; },
          [](const GeoPoint& x) {
            return FormatCoordinate(x.latitude) + ", " + FormatCoordinate(x.longitude);
          },
          [](const MacAddress& x) { return x.text; },
          [](const IpAddress& x) { return x.text; },
          [](const StreetAddress& x) { return x.text; },
          [](const ConnectionState& x) { return std::string(x.allowed ? "allowed" : "blocked"); },
          [](const MediaToken& x) { return x.token; },
      },
      v);
}

nlohmann::json ValueToJson(const ResourceValue& v) {
  nlohmann::json j;
  j["kind"] = std::string(ValueKindName(KindOf(v)));
  std::visit(Overloaded{
                 [&](const Imei& x) { j["value"] = x.digits; },
                 [&](const GeoPoint& x) {
                   j["latitude"] = x.latitude;
                   j["longitude"] = x.longitude;
                 },
                 [&](const MacAddress& x) { j["value"] = x.text; },
                 [&](const IpAddress& x) { j["value"] = x.text; },
                 [&](const StreetAddress& x) { j["value"] = x.text; },
                 [&](const ConnectionState& x) { j["allowed"] = x.allowed; },
                 [&](const MediaToken& x) { j["value"] = x.token; },
             },
             v);
  return j;
}

ResourceValue ValueFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    Invalid("value must be an object with a 'kind' field");
  }
  const std::string kind = j["kind"];
  auto text = [&]() -> std::string {
    if (!j.contains("value") || !j["value"].is_string()) Invalid(kind + " value needs a string 'value'");
    return j["value"].get<std::string>();
  };
  if (kind == "imei") return Imei::Parse(text());
  if (kind == "location") {
    if (!j.contains("latitude") || !j["latitude"].is_number() || !j.contains("longitude") ||
        !j["longitude"].is_number()) {
      Invalid("location needs numeric 'latitude' and 'longitude'");
    }
    return GeoPoint::Make(j["latitude"].get<double>(), j["longitude"].get<double>());
  }
  if (kind == "mac") return MacAddress::Parse(text());
  if (kind == "ip") return IpAddress::Parse(text());
  if (kind == "address") return StreetAddress{text()};
  if (kind == "connection") {
    if (!j.contains("allowed") || !j["allowed"].is_boolean()) Invalid("connection needs boolean 'allowed'");
    return ConnectionState{j["allowed"].get<bool>()};
  }
  if (kind == "token") return MediaToken{text()};
  Invalid("unknown value kind '" + kind + "'");
}

nlohmann::json PseudoConfigToJson(const PseudoConfig& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : config) j[key.Name()] = ValueToJson(value);
  return j;
}

PseudoConfig PseudoConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) Invalid("pseudo config must be an object");
  PseudoConfig config;
  for (const auto& [name, value] : j.items()) {
    ResourceKey key = ParseResourceKey(name);
    if (!IsPseudoCapable(key.permission)) {
      throw Error(ErrorCode::kNotPseudoCapable, name + " has no pseudo representation");
    }
    ResourceValue v = ValueFromJson(value);
    if (KindOf(v) != KindForResource(key)) {
      Invalid(fmt::format("{} expects a {} value, got {}", name,
                          ValueKindName(KindForResource(key)), ValueKindName(KindOf(v))));
    }
    config[key] = std::move(v);
  }
  return config;
}

}  // namespace centerguard
