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

#ifndef CENTERGUARD_POLICY_CONFIG_H_
#define CENTERGUARD_POLICY_CONFIG_H_

#include <filesystem>

#include "json.hpp"

#include "centerguard/privacy_score.h"
#include "centerguard/pseudo_value.h"

namespace centerguard {

// Registry declaration, risk weights and pseudo defaults, loaded from one
// JSON file (schema in docs/formats.md).
struct PolicyConfig {
  RiskWeightTable weights = RiskWeightTable::Default();
  PseudoConfig pseudo_defaults;

  static PolicyConfig FromJson(const nlohmann::json& j);
  static PolicyConfig Load(const std::filesystem::path& path);
  nlohmann::json ToJson() const;
};

}  // namespace centerguard

#endif  // CENTERGUARD_POLICY_CONFIG_H_
