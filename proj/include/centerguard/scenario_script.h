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

#ifndef CENTERGUARD_SCENARIO_SCRIPT_H_
#define CENTERGUARD_SCENARIO_SCRIPT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centerguard/sim_clock.h"

namespace centerguard {

enum class ScenarioAction {
  kDevice,         // device <fixture>            (must come first)
  kInstall,        // install <manifest fixture>
  kSetMode,        // set-mode autopilot|easy|advanced
  kSetPermission,  // set-permission <package> <PERM[.detail]> real|block|pseudo [value...]
  kSetPseudo,      // set-pseudo <PERM[.detail]> <value...>
  kNetworkChange,  // network-change wifi|gprs|none
  kWifiOnly,       // wifi-only on|off
  kMove,           // move <lat> <lon>
  kTick,           // tick
  kSync,           // sync
  kRunApp,         // run-app <package> [count]
  kPoll,           // poll
};

std::string_view ScenarioActionName(ScenarioAction a);
std::optional<ScenarioAction> ScenarioActionFromName(std::string_view name);

struct ScenarioEvent {
  Instant at;
  ScenarioAction action;
  std::vector<std::string> args;
  size_t line = 0;
};

struct ScenarioScript {
  std::vector<ScenarioEvent> events;

  bool NeedsCloud() const;
};

// One event per non-blank, non-comment ('#') line:
//   YYYY-MM-DD HH:MM:SS <action> [args...]
// Arguments are whitespace separated; double quotes group an argument that
// contains spaces. Throws kParseError "<origin>:<line>:<column>: ..." for
// unknown actions, bad arity or argument shapes, and out-of-order times.
ScenarioScript ParseScenario(std::string_view text, std::string_view origin = "<scenario>");
ScenarioScript LoadScenario(const std::filesystem::path& path);

}  // namespace centerguard

#endif  // CENTERGUARD_SCENARIO_SCRIPT_H_
