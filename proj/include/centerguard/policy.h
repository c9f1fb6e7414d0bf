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

#ifndef CENTERGUARD_POLICY_H_
#define CENTERGUARD_POLICY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "centerguard/permission.h"
#include "centerguard/pseudo_value.h"

namespace centerguard {

enum class ModeTag { kReal, kPseudo, kBlock };

std::string_view ModeTagName(ModeTag tag);
std::optional<ModeTag> ModeTagFromName(std::string_view name);  // case-insensitive

// Enforcement state of one permission. An override is only ever carried by
// a Pseudo mode.
class PermissionMode {
 public:
  static PermissionMode Real() { return PermissionMode(ModeTag::kReal, std::nullopt); }
  static PermissionMode Block() { return PermissionMode(ModeTag::kBlock, std::nullopt); }
  static PermissionMode Pseudo(std::optional<ResourceValue> override_value = std::nullopt) {
    return PermissionMode(ModeTag::kPseudo, std::move(override_value));
  }

  ModeTag tag() const { return tag_; }
  const std::optional<ResourceValue>& pseudo_override() const { return override_; }
  bool is_protected() const { return tag_ != ModeTag::kReal; }

  bool operator==(const PermissionMode&) const = default;

 private:
  PermissionMode(ModeTag tag, std::optional<ResourceValue> o)
      : tag_(tag), override_(std::move(o)) {}

  ModeTag tag_;
  std::optional<ResourceValue> override_;
};

// Throws kNotPseudoCapable / kInvalidValue when |mode| cannot apply to |p|.
void ValidateMode(Permission p, const PermissionMode& mode);

struct AppPolicy {
  std::string package;
  std::string version;
  std::map<Permission, PermissionMode> entries;

  bool operator==(const AppPolicy&) const = default;
};

// Validates every entry's mode.
void ValidatePolicy(const AppPolicy& policy);
// Entries must name exactly |requested|. Throws Error(kValidationError).
void ValidatePolicyCovers(const AppPolicy& policy, std::span<const Permission> requested);

// policy.entries[permission] when present, else |default_mode|.
PermissionMode ResolveMode(const AppPolicy* policy, Permission permission,
                           const PermissionMode& default_mode);

// A policy covering exactly |requested|, with gaps filled by |default_mode|.
AppPolicy EffectivePolicy(const AppPolicy* policy, std::string_view package,
                          std::string_view version, std::span<const Permission> requested,
                          const PermissionMode& default_mode);

// The value injected for |key| under a Pseudo |mode|: the mode's override
// when its kind fits the resource, otherwise the device pseudo config.
ResourceValue InjectedValue(const PermissionMode& mode, const ResourceKey& key,
                            const PseudoConfig& config);

nlohmann::json ModeToJson(const PermissionMode& mode);
PermissionMode ModeFromJson(const nlohmann::json& j);
nlohmann::json PolicyToJson(const AppPolicy& policy);
AppPolicy PolicyFromJson(const nlohmann::json& j);  // validated

}  // namespace centerguard

#endif  // CENTERGUARD_POLICY_H_
