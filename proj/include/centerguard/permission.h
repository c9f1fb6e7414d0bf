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

#ifndef CENTERGUARD_PERMISSION_H_
#define CENTERGUARD_PERMISSION_H_

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace centerguard {

// The closed permission registry. Canonical names are uppercase short
// names (no android.permission.* namespace).
enum class Permission {
  kLocation,
  kDeviceId,
  kCamera,
  kContacts,
  kMicrophone,
  kNetwork,
  kStorage,
  kPhoneState,
};

inline constexpr std::array<Permission, 8> kAllPermissions = {
    Permission::kLocation, Permission::kDeviceId,   Permission::kCamera,
    Permission::kContacts, Permission::kMicrophone, Permission::kNetwork,
    Permission::kStorage,  Permission::kPhoneState,
};

std::string_view PermissionName(Permission p);
std::optional<Permission> PermissionFromName(std::string_view name);
// Throws Error(kUnknownPermission).
Permission ParsePermission(std::string_view name);

enum class Variant { kReal, kPseudo };

// One half of the Real/Pseudo duplication, e.g. LOCATION.PSEUDO.
struct PermissionVariant {
  Permission base;
  Variant variant;

  std::string Name() const;
  auto operator<=>(const PermissionVariant&) const = default;
};

struct PermissionPair {
  PermissionVariant real;
  PermissionVariant pseudo;

  bool operator==(const PermissionPair&) const = default;
};

// Every base permission gets exactly one Real and one Pseudo variant, in
// input order. Throws Error(kDuplicatePermission) on repeats.
std::vector<PermissionPair> DuplicateRegistry(std::span<const Permission> base);
std::vector<Permission> BaseProjection(std::span<const PermissionPair> pairs);
std::optional<PermissionVariant> ParsePermissionVariant(std::string_view name);

// NETWORK is spoofable per facet; other permissions take no qualifier.
enum class Detail { kNone, kMac, kIp, kConnection };

std::string_view DetailName(Detail d);
std::optional<Detail> DetailFromName(std::string_view name);

// A concrete resource an app can read: a permission plus its facet.
struct ResourceKey {
  Permission permission;
  Detail detail = Detail::kNone;

  // Fills in the default facet (NETWORK -> connection) and rejects facets
  // on permissions that have none.
  static ResourceKey Normalized(Permission p, Detail d = Detail::kNone);
  std::string Name() const;  // "LOCATION", "NETWORK.mac"

  auto operator<=>(const ResourceKey&) const = default;
};

// Throws Error(kUnknownPermission).
ResourceKey ParseResourceKey(std::string_view name);

}  // namespace centerguard

#endif  // CENTERGUARD_PERMISSION_H_
