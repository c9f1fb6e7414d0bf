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

#include "centerguard/policy_config.h"

#include <fstream>
#include <set>
#include <vector>

#include "centerguard/errors.h"

namespace centerguard {

PolicyConfig PolicyConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kValidationError, "config must be an object");

  if (j.contains("permissions")) {
    std::vector<Permission> declared;
    for (const auto& name : j["permissions"]) declared.push_back(ParsePermission(name.get<std::string>()));
    DuplicateRegistry(declared);
    if (declared.size() != kAllPermissions.size()) {
      throw Error(ErrorCode::kValidationError,
                  "config must declare all " + std::to_string(kAllPermissions.size()) +
                      " registered permissions");
    }
  }

  PolicyConfig config;
  if (j.contains("risk_weights")) {
    std::map<Permission, unsigned> weights;
    for (const auto& [name, w] : j["risk_weights"].items()) {
      if (!w.is_number_integer() || w.get<long long>() < 0) {
        throw Error(ErrorCode::kValidationError, "risk weight for " + name + " must be a non-negative integer");
      }
      weights[ParsePermission(name)] = w.get<unsigned>();
    }
    config.weights = RiskWeightTable::FromMap(std::move(weights));
  }
  if (j.contains("pseudo_defaults")) {
    config.pseudo_defaults = PseudoConfigFromJson(j["pseudo_defaults"]);
  }
  return config;
}

PolicyConfig PolicyConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return FromJson(j);
}

nlohmann::json PolicyConfig::ToJson() const {
  nlohmann::json perms = nlohmann::json::array();
  nlohmann::json weights_json = nlohmann::json::object();
  for (Permission p : kAllPermissions) {
    perms.push_back(std::string(PermissionName(p)));
    weights_json[std::string(PermissionName(p))] = weights.WeightOf(p);
  }
  return {{"permissions", perms},
          {"risk_weights", weights_json},
          {"pseudo_defaults", PseudoConfigToJson(pseudo_defaults)}};
}

}  // namespace centerguard
