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

#ifndef CENTERGUARD_PSEUDO_VALUE_H_
#define CENTERGUARD_PSEUDO_VALUE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "centerguard/permission.h"

namespace centerguard {

// 1-16 decimal digits.
struct Imei {
  std::string digits;

  static Imei Parse(std::string_view text);  // throws Error(kInvalidValue)
  static bool IsValid(std::string_view text);
  bool operator==(const Imei&) const = default;
};

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;

  static GeoPoint Make(double latitude, double longitude);  // range-checked
  bool operator==(const GeoPoint&) const = default;
};

// HH:HH:HH:HH:HH:HH, uppercase hex.
struct MacAddress {
  std::string text;

  static MacAddress Parse(std::string_view text);
  static bool IsValid(std::string_view text);
  bool operator==(const MacAddress&) const = default;
};

// Dotted quad.
struct IpAddress {
  std::string text;

  static IpAddress Parse(std::string_view text);
  static bool IsValid(std::string_view text);
  bool operator==(const IpAddress&) const = default;
};

struct StreetAddress {
  std::string text;
  bool operator==(const StreetAddress&) const = default;
};

struct ConnectionState {
  bool allowed = true;
  bool operator==(const ConnectionState&) const = default;
};

// Opaque capture payloads: photos, audio clips, contact dumps.
struct MediaToken {
  std::string token;
  bool operator==(const MediaToken&) const = default;
};

// What a resource read yields, real or pseudo. Both share one
// representation so an app cannot tell them apart by type.
using ResourceValue = std::variant<Imei, GeoPoint, MacAddress, IpAddress,
                                   StreetAddress, ConnectionState, MediaToken>;

enum class ValueKind { kImei, kLocation, kMac, kIp, kAddress, kConnection, kToken };

ValueKind KindOf(const ResourceValue& v);
std::string_view ValueKindName(ValueKind k);

// Kind of value a resource yields; defined for every resource.
ValueKind KindForResource(const ResourceKey& key);
// False for resources with no fake-data representation (CONTACTS, MICROPHONE).
bool IsPseudoCapable(Permission p);

inline constexpr std::string_view kPlaceholderImage = "placeholder:1x1";

using PseudoConfig = std::map<ResourceKey, ResourceValue>;

// Sentinel values used when no pseudo value is configured.
ResourceValue DefaultPseudoValue(const ResourceKey& key);

// Configured value verbatim, else the default. Throws Error(kNotPseudoCapable).
ResourceValue PseudoValueFor(const ResourceKey& key, const PseudoConfig& config);

// Human-readable rendering ("2.9451411, 56.7853837", "allowed", ...).
std::string DisplayValue(const ResourceValue& v);
std::string FormatCoordinate(double degrees);

nlohmann::json ValueToJson(const ResourceValue& v);
ResourceValue ValueFromJson(const nlohmann::json& j);  // throws Error(kInvalidValue)

nlohmann::json PseudoConfigToJson(const PseudoConfig& config);
// Keys are resource names ("NETWORK.mac"); value kinds must match the key.
PseudoConfig PseudoConfigFromJson(const nlohmann::json& j);

}  // namespace centerguard

#endif  // CENTERGUARD_PSEUDO_VALUE_H_
