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

#ifndef CENTERGUARD_MANIFEST_H_
#define CENTERGUARD_MANIFEST_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/permission.h"

namespace centerguard {

enum class BehaviorAction {
  kFlash,       // drive the camera light; functional
  kDisplay,     // read resources and show them to the user; functional
  kProbe,       // read resources and print a report; functional
  kExfiltrate,  // read resources and ship them to a remote collector
};

std::string_view BehaviorActionName(BehaviorAction a);

struct Behavior {
  BehaviorAction action;
  std::vector<ResourceKey> resources;
  std::string target;  // exfiltration endpoint name, e.g. "collector"

  bool operator==(const Behavior&) const = default;
};

// Abstract stand-in for an APK: identity, requested permissions, and the
// actions the app performs when run.
struct AppManifest {
  std::string app_name;
  std::string package;
  std::string version;
  std::vector<Permission> requested_permissions;
  std::vector<Behavior> behaviors;

  bool Requests(Permission p) const;
  // Requested permissions no functional behaviour needs.
  std::set<Permission> UnusedPermissions() const;
  bool IsOverPrivileged() const { return !UnusedPermissions().empty(); }
  // "sha256:<hex>" over the canonical JSON form; stands in for the APK hash.
  std::string ContentHash() const;

  bool operator==(const AppManifest&) const = default;
};

// Throws kValidationError / kUnknownPermission / kDuplicatePermission.
void ValidateManifest(const AppManifest& manifest);

nlohmann::json ManifestToJson(const AppManifest& manifest);
AppManifest ManifestFromJson(const nlohmann::json& j);  // validated
AppManifest LoadManifest(const std::filesystem::path& path);

}  // namespace centerguard

#endif  // CENTERGUARD_MANIFEST_H_
