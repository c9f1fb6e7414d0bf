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

#include "centerguard/privacy_score.h"

#include <cstdint>

#include "centerguard/errors.h"

namespace centerguard {

RiskWeightTable RiskWeightTable::Default() {
  return FromMap({
      {Permission::kLocation, 3},
      {Permission::kDeviceId, 3},
      {Permission::kContacts, 3},
      {Permission::kCamera, 2},
      {Permission::kMicrophone, 2},
      {Permission::kStorage, 2},
      {Permission::kPhoneState, 2},
      {Permission::kNetwork, 1},
  });
}

RiskWeightTable RiskWeightTable::FromMap(std::map<Permission, unsigned> weights) {
  for (Permission p : kAllPermissions) {
    if (!weights.contains(p)) {
      throw Error(ErrorCode::kValidationError,
                  "risk weight missing for " + std::string(PermissionName(p)));
    }
  }
  RiskWeightTable table;
  table.weights_ = std::move(weights);
  return table;
}

std::string_view BandName(Band band) {
  switch (band) {
    case Band::kGreen: return "Green";
    case Band::kAmber: return "Amber";
    case Band::kRed: return "Red";
  }
  return "";
}

Band BandFor(int value) {
  if (value >= 80) return Band::kGreen;
  if (value >= 50) return Band::kAmber;
  return Band::kRed;
}

PrivacyScore ComputePrivacyScore(std::span<const AppProtection> apps,
                                 const RiskWeightTable& weights) {
  std::uint64_t total = 0;
  std::uint64_t protected_weight = 0;
  for (const auto& app : apps) {
    for (Permission p : app.requested) {
      unsigned w = weights.WeightOf(p);
      if (w == 0) continue;
      total += w;
      auto it = app.effective.entries.find(p);
      if (it != app.effective.entries.end() && it->second.is_protected()) protected_weight += w;
    }
  }
  if (total == 0) return {100, Band::kGreen};
  // Integer round-half-up of 100 * protected / total.
  int value = static_cast<int>((200 * protected_weight + total) / (2 * total));
  return {value, BandFor(value)};
}

nlohmann::json ScoreToJson(const PrivacyScore& score) {
  return {{"value", score.value}, {"band", std::string(BandName(score.band))}};
}

}  // namespace centerguard
