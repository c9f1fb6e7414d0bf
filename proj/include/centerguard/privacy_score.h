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

#ifndef CENTERGUARD_PRIVACY_SCORE_H_
#define CENTERGUARD_PRIVACY_SCORE_H_

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/permission.h"
#include "centerguard/policy.h"

namespace centerguard {

// Non-negative weight per registered permission; 0 means not
// privacy-relevant.
class RiskWeightTable {
 public:
  // LOCATION 3, DEVICE_ID 3, CONTACTS 3, CAMERA 2, MICROPHONE 2,
  // STORAGE 2, PHONE_STATE 2, NETWORK 1.
  static RiskWeightTable Default();
  // Every registered permission must be present.
  static RiskWeightTable FromMap(std::map<Permission, unsigned> weights);

  unsigned WeightOf(Permission p) const { return weights_.at(p); }
  const std::map<Permission, unsigned>& weights() const { return weights_; }

 private:
  std::map<Permission, unsigned> weights_;
};

enum class Band { kGreen, kAmber, kRed };

std::string_view BandName(Band band);
// >=80 Green, 50-79 Amber, <50 Red.
Band BandFor(int value);

struct PrivacyScore {
  int value = 100;
  Band band = Band::kGreen;

  bool operator==(const PrivacyScore&) const = default;
};

struct AppProtection {
  std::vector<Permission> requested;
  AppPolicy effective;
};

// round(100 * protected weight / total weight) over every weighted
// (app, permission) instance; an instance is protected when its mode is
// Pseudo or Block. No weighted instances scores 100.
PrivacyScore ComputePrivacyScore(std::span<const AppProtection> apps,
                                 const RiskWeightTable& weights);

nlohmann::json ScoreToJson(const PrivacyScore& score);

}  // namespace centerguard

#endif  // CENTERGUARD_PRIVACY_SCORE_H_
