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

#include "centerguard/manifest.h"

#include <algorithm>

#include "centerguard/digest.h"
#include "centerguard/errors.h"
#include "centerguard/json_io.h"

namespace centerguard {
namespace {

BehaviorAction ParseAction(std::string_view name) {
  for (auto a : {BehaviorAction::kFlash, BehaviorAction::kDisplay, BehaviorAction::kProbe,
                 BehaviorAction::kExfiltrate}) {
    if (BehaviorActionName(a) == name) return a;
  }
  throw Error(ErrorCode::kValidationError, "unknown behavior action '" + std::string(name) + "'");
}

}  // namespace

std::string_view BehaviorActionName(BehaviorAction a) {
  switch (a) {
    case BehaviorAction::kFlash: return "flash";
    case BehaviorAction::kDisplay: return "display";
    case BehaviorAction::kProbe: return "probe";
    case BehaviorAction::kExfiltrate: return "exfiltrate";
  }
  return "";
}

bool AppManifest::Requests(Permission p) const {
  return std::find(requested_permissions.begin(), requested_permissions.end(), p) !=
         requested_permissions.end();
}

std::set<Permission> AppManifest::UnusedPermissions() const {
  std::set<Permission> unused(requested_permissions.begin(), requested_permissions.end());
  for (const auto& b : behaviors) {
    if (b.action == BehaviorAction::kExfiltrate) continue;
    for (const auto& r : b.resources) unused.erase(r.permission);
  }
  return unused;
}

std::string AppManifest::ContentHash() const {
  return "sha256:" + Sha256Hex(ManifestToJson(*this).dump());
}

void ValidateManifest(const AppManifest& m) {
  if (m.app_name.empty() || m.package.empty()) {
    throw Error(ErrorCode::kValidationError, "manifest needs app_name and package");
  }
  DuplicateRegistry(m.requested_permissions);
  for (const auto& b : m.behaviors) {
    for (const auto& r : b.resources) {
      if (!m.Requests(r.permission)) {
        throw Error(ErrorCode::kValidationError,
                    m.package + ": behavior " + std::string(BehaviorActionName(b.action)) +
                        " touches unrequested " + r.Name());
      }
    }
    if (b.action == BehaviorAction::kExfiltrate && !m.Requests(Permission::kNetwork)) {
      throw Error(ErrorCode::kValidationError, m.package + ": exfiltration needs NETWORK");
    }
  }
}

nlohmann::json ManifestToJson(const AppManifest& m) {
  nlohmann::json perms = nlohmann::json::array();
  for (Permission p : m.requested_permissions) perms.push_back(std::string(PermissionName(p)));
  nlohmann::json behaviors = nlohmann::json::array();
  for (const auto& b : m.behaviors) {
    nlohmann::json resources = nlohmann::json::array();
    for (const auto& r : b.resources) resources.push_back(r.Name());
    nlohmann::json jb = {{"action", std::string(BehaviorActionName(b.action))},
                         {"resources", resources}};
    if (!b.target.empty()) jb["target"] = b.target;
    behaviors.push_back(std::move(jb));
  }
  return {{"app_name", m.app_name},
          {"package", m.package},
          {"version", m.version},
          {"requested_permissions", perms},
          {"behaviors", behaviors}};
}

AppManifest ManifestFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kValidationError, "manifest must be an object");
  AppManifest m;
  try {
    m.app_name = j.at("app_name").get<std::string>();
    m.package = j.at("package").get<std::string>();
    m.version = j.value("version", "");
    for (const auto& p : j.at("requested_permissions")) {
      m.requested_permissions.push_back(ParsePermission(p.get<std::string>()));
    }
    if (j.contains("behaviors")) {
      for (const auto& jb : j["behaviors"]) {
        Behavior b{ParseAction(jb.at("action").get<std::string>()), {}, jb.value("target", "")};
        for (const auto& r : jb.value("resources", nlohmann::json::array())) {
          b.resources.push_back(ParseResourceKey(r.get<std::string>()));
        }
        m.behaviors.push_back(std::move(b));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidationError, std::string("bad manifest: ") + e.what());
  }
  ValidateManifest(m);
  return m;
}

AppManifest LoadManifest(const std::filesystem::path& path) {
  return ManifestFromJson(ReadJsonFile(path));
}

}  // namespace centerguard
