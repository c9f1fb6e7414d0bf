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

#ifndef CENTERGUARD_APP_RUNTIME_H_
#define CENTERGUARD_APP_RUNTIME_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "centerguard/collector.h"
#include "centerguard/device.h"

namespace centerguard {

// What one execution of a simulated app did, as seen from the app's side.
struct AppRunReport {
  std::string package;
  bool flashed = false;
  // Values the app showed to the user, in behaviour order. A denied read
  // shows nothing (nullopt).
  std::vector<std::pair<ResourceKey, std::optional<ResourceValue>>> displayed;
  // Probe output: resource name -> observed display value (null if denied).
  nlohmann::json probe = nlohmann::json::object();
  // Set when an exfiltration reached the collector.
  std::optional<CollectorPost> exfiltrated;
};

nlohmann::json AppRunReportToJson(const AppRunReport& r);

// Executes every behaviour of the installed app |package| once, reading
// resources only through the device's broker. Exfiltration needs a granted,
// allowed NETWORK.connection and a non-null |sink|; otherwise nothing is
// posted. Throws kUnknownApp if the app is not installed.
AppRunReport RunApp(Device& device, const std::string& package, CollectorSink* sink);

}  // namespace centerguard

#endif  // CENTERGUARD_APP_RUNTIME_H_
