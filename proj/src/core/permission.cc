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

#include "centerguard/permission.h"

#include <set>

#include "centerguard/errors.h"

namespace centerguard {
namespace {

constexpr std::string_view kRealSuffix = ".REAL";
constexpr std::string_view kPseudoSuffix = ".PSEUDO";

}  // namespace

std::string_view PermissionName(Permission p) {
  switch (p) {
    case Permission::kLocation: return "LOCATION";
    case Permission::kDeviceId: return "DEVICE_ID";
    case Permission::kCamera: return "CAMERA";
    case Permission::kContacts: return "CONTACTS";
    case Permission::kMicrophone: return "MICROPHONE";
    case Permission::kNetwork: return "NETWORK";
    case Permission::kStorage: return "STORAGE";
    case Permission::kPhoneState: return "PHONE_STATE";
  }
  return "";
}

std::optional<Permission> PermissionFromName(std::string_view name) {
  for (Permission p : kAllPermissions) {
    if (PermissionName(p) == name) return p;
  }
  return std::nullopt;
}

Permission ParsePermission(std::string_view name) {
  if (auto p = PermissionFromName(name)) return *p;
  throw Error(ErrorCode::kUnknownPermission,
              "unknown permission '" + std::string(name) + "'");
}

std::string PermissionVariant::Name() const {
  std::string out(PermissionName(base));
  out += variant == Variant::kReal ? kRealSuffix : kPseudoSuffix;
  return out;
}

std::vector<PermissionPair> DuplicateRegistry(std::span<const Permission> base) {
  std::set<Permission> seen;
  std::vector<PermissionPair> pairs;
  pairs.reserve(base.size());
  for (Permission p : base) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::kDuplicatePermission,
                  "permission listed twice: " + std::string(PermissionName(p)));
    }
    pairs.push_back({{p, Variant::kReal}, {p, Variant::kPseudo}});
  }
  return pairs;
}

std::vector<Permission> BaseProjection(std::span<const PermissionPair> pairs) {
  std::vector<Permission> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(pair.real.base);
  return out;
}

std::optional<PermissionVariant> ParsePermissionVariant(std::string_view name) {
  auto strip = [&](std::string_view suffix) -> std::optional<Permission> {
    if (name.size() <= suffix.size() || !name.ends_with(suffix)) return std::nullopt;
    return PermissionFromName(name.substr(0, name.size() - suffix.size()));
  };
  if (auto p = strip(kRealSuffix)) return PermissionVariant{*p, Variant::kReal};
  if (auto p = strip(kPseudoSuffix)) return PermissionVariant{*p, Variant::kPseudo};
  return std::nullopt;
}

std::string_view DetailName(Detail d) {
  switch (d) {
    case Detail::kNone: return "";
    case Detail::kMac: return "mac";
    case Detail::kIp: return "ip";
    case Detail::kConnection: return "connection";
  }
  return "";
}

std::optional<Detail> DetailFromName(std::string_view name) {
  if (name.empty()) return Detail::kNone;
  if (name == "mac") return Detail::kMac;
  if (name == "ip") return Detail::kIp;
  if (name == "connection") return Detail::kConnection;
  return std::nullopt;
}

ResourceKey ResourceKey::Normalized(Permission p, Detail d) {
  if (p == Permission::kNetwork) {
    return {p, d == Detail::kNone ? Detail::kConnection : d};
  }
  if (d != Detail::kNone) {
    throw Error(ErrorCode::kUnknownPermission,
                std::string(PermissionName(p)) + " takes no detail qualifier");
  }
  return {p, Detail::kNone};
}

std::string ResourceKey::Name() const {
  std::string out(PermissionName(permission));
  if (detail != Detail::kNone) {
    out += '.';
    out += DetailName(detail);
  }
  return out;
}

ResourceKey ParseResourceKey(std::string_view name) {
  auto dot = name.find('.');
  Permission p = ParsePermission(name.substr(0, dot));
  Detail d = Detail::kNone;
  if (dot != std::string_view::npos) {
    auto parsed = DetailFromName(name.substr(dot + 1));
    if (!parsed || *parsed == Detail::kNone) {
      throw Error(ErrorCode::kUnknownPermission,
                  "unknown resource '" + std::string(name) + "'");
    }
    d = *parsed;
  }
  return ResourceKey::Normalized(p, d);
}

}  // namespace centerguard
