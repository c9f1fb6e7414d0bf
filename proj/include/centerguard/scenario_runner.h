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

#ifndef CENTERGUARD_SCENARIO_RUNNER_H_
#define CENTERGUARD_SCENARIO_RUNNER_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "centerguard/cloud_api.h"
#include "centerguard/collector.h"
#include "centerguard/device.h"
#include "centerguard/privacy_score.h"
#include "centerguard/scenario_script.h"

namespace centerguard {

enum class ClockKind { kVirtual, kWall };

std::optional<ClockKind> ClockKindFromName(std::string_view name);

struct RunnerOptions {
  ClockKind clock = ClockKind::kVirtual;
  DeviceOptions device;
  // Fixture paths in the script resolve against |base_dir| first, then
  // |fixture_dir|.
  std::filesystem::path base_dir = ".";
  std::filesystem::path fixture_dir;
  // Device used when the script has no 'device' event.
  std::filesystem::path default_device;
  RiskWeightTable weights = RiskWeightTable::Default();
  // Fill-ins for pseudo values the device fixture leaves unset.
  PseudoConfig pseudo_defaults;
};

// Parses the value arguments of set-pseudo / set-permission for |key|:
// IMEI digits, "<lat> <lon>", MAC, dotted IP, address text,
// allowed|blocked, or a media token.
ResourceValue ParseValueArgs(const ResourceKey& key, std::span<const std::string> args);

// Executes |script| event by event. |cloud| may be null when the script
// never syncs, ticks or polls; otherwise a null cloud raises
// kCloudUnreachable. |collector| receives exfiltrated rows; when null an
// in-process collector on the scenario clock is used. Returns the report:
// per-event results, sync reports, collector rows, audit log and final
// privacy score. With the virtual clock the report is a pure function of
// the inputs.
nlohmann::json RunScenario(const ScenarioScript& script, const RunnerOptions& options, CloudApi* cloud,
                           CollectorSink* collector = nullptr);

}  // namespace centerguard

#endif  // CENTERGUARD_SCENARIO_RUNNER_H_
