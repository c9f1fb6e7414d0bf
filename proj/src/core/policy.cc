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

#include "centerguard/policy.h"

#include <algorithm>
#include <set>

#include "centerguard/errors.h"

namespace centerguard {

std::string_view ModeTagName(ModeTag tag) {
  switch (tag) {
    case ModeTag::kReal: return "Real";
    case ModeTag::kPseudo: return "Pseudo";
    case ModeTag::kBlock: return "Block";
  }
  return "";
}

std::optional<ModeTag> ModeTagFromName(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "real") return ModeTag::kReal;
  if (lower == "pseudo") return ModeTag::kPseudo;
  if (lower == "block") return ModeTag::kBlock;
  return std::nullopt;
}

void ValidateMode(Permission p, const PermissionMode& mode) {
  if (mode.tag() != ModeTag::kPseudo) return;
  if (!IsPseudoCapable(p)) {
    throw Error(ErrorCode::kNotPseudoCapable,
                std::string(PermissionName(p)) + " has no pseudo representation");
  }
  if (!mode.pseudo_override()) return;
  ValueKind kind = KindOf(*mode.pseudo_override());
  bool fits = false;
  if (p == Permission::kNetwork) {
    fits = kind == ValueKind::kMac || kind == ValueKind::kIp || kind == ValueKind::kConnection;
  } else {
    fits = kind == KindForResource(ResourceKey::Normalized(p));
  }
  if (!fits) {
    throw Error(ErrorCode::kInvalidValue,
                std::string(ValueKindName(kind)) + " override does not fit " +
                    std::string(PermissionName(p)));
  }
}

void ValidatePolicy(const AppPolicy& policy) {
  if (policy.package.empty()) {
    throw Error(ErrorCode::kValidationError, "policy has no package");
  }
  for (const auto& [perm, mode] : policy.entries) ValidateMode(perm, mode);
}

void ValidatePolicyCovers(const AppPolicy& policy, std::span<const Permission> requested) {
  std::set<Permission> want(requested.begin(), requested.end());
  for (Permission p : want) {
    if (!policy.entries.contains(p)) {
      throw Error(ErrorCode::kValidationError,
                  "policy for " + policy.package + " is missing requested permission " +
                      std::string(PermissionName(p)));
    }
  }
  for (const auto& [p, mode] : policy.entries) {
    if (!want.contains(p)) {
      throw Error(ErrorCode::kValidationError,
                  "policy for " + policy.package + " names unrequested permission " +
                      std::string(PermissionName(p)));
    }
  }
}

PermissionMode ResolveMode(const AppPolicy* policy, Permission permission,
                           const PermissionMode& default_mode) {
  if (policy) {
    if (auto it = policy->entries.find(permission); it != policy->entries.end()) {
      return it->second;
    }
  }
  return default_mode;
}

AppPolicy EffectivePolicy(const AppPolicy* policy, std::string_view package,
                          std::string_view version, std::span<const Permission> requested,
                          const PermissionMode& default_mode) {
  AppPolicy out{std::string(package), std::string(version), {}};
  for (Permission p : requested) out.entries.insert_or_assign(p, ResolveMode(policy, p, default_mode));
  return out;
}

ResourceValue InjectedValue(const PermissionMode& mode, const ResourceKey& key,
                            const PseudoConfig& config) {
  if (const auto& o = mode.pseudo_override(); o && KindOf(*o) == KindForResource(key)) {
    PseudoConfig overlay = config;
    overlay[key] = *o;
    return PseudoValueFor(key, overlay);
  }
  return PseudoValueFor(key, config);
}

nlohmann::json ModeToJson(const PermissionMode& mode) {
  nlohmann::json j;
  j["mode"] = std::string(ModeTagName(mode.tag()));
  if (mode.pseudo_override()) j["override"] = ValueToJson(*mode.pseudo_override());
  return j;
}

PermissionMode ModeFromJson(const nlohmann::json& j) {
  nlohmann::json obj = j.is_string() ? nlohmann::json{{"mode", j}} : j;
  if (!obj.is_object() || !obj.contains("mode") || !obj["mode"].is_string()) {
    throw Error(ErrorCode::kValidationError, "mode must be a string or {mode, override}");
  }
  auto tag = ModeTagFromName(obj["mode"].get<std::string>());
  if (!tag) {
    throw Error(ErrorCode::kValidationError,
                "unknown mode '" + obj["mode"].get<std::string>() + "'");
  }
  bool has_override = obj.contains("override") && !obj["override"].is_null();
  if (has_override && *tag != ModeTag::kPseudo) {
    throw Error(ErrorCode::kValidationError, "override is only valid with Pseudo");
  }
  switch (*tag) {
    case ModeTag::kReal: return PermissionMode::Real();
    case ModeTag::kBlock: return PermissionMode::Block();
    case ModeTag::kPseudo:
      if (has_override) return PermissionMode::Pseudo(ValueFromJson(obj["override"]));
      return PermissionMode::Pseudo();
  }
  return PermissionMode::Real();
}

nlohmann::json PolicyToJson(const AppPolicy& policy) {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [p, mode] : policy.entries) entries[std::string(PermissionName(p))] = ModeToJson(mode);
  return {{"package", policy.package}, {"version", policy.version}, {"entries", entries}};
}

AppPolicy PolicyFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("package") || !j["package"].is_string()) {
    throw Error(ErrorCode::kValidationError, "policy needs a string 'package'");
  }
  AppPolicy policy;
  policy.package = j["package"].get<std::string>();
  policy.version = j.value("version", "");
  if (j.contains("entries")) {
    if (!j["entries"].is_object()) throw Error(ErrorCode::kValidationError, "'entries' must be an object");
    for (const auto& [name, mode] : j["entries"].items()) {
      policy.entries.insert_or_assign(ParsePermission(name), ModeFromJson(mode));
    }
  }
  ValidatePolicy(policy);
  return policy;
}

}  // namespace centerguard
