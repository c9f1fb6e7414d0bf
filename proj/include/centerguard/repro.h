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

#ifndef CENTERGUARD_REPRO_H_
#define CENTERGUARD_REPRO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "centerguard/collector.h"
#include "centerguard/device_state.h"

namespace centerguard {

struct ReproCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproReport {
  std::string figure;
  std::vector<ReproCheck> checks;
  nlohmann::json observed;

  bool pass() const;
  std::string Render() const;  // one line per check plus a verdict line
};

nlohmann::json ReproReportToJson(const ReproReport& r);

struct ReproOptions {
  std::filesystem::path fixture_dir;
  // table3 only; unset fields come from the fixture.
  std::optional<size_t> runs;
  std::optional<size_t> calls;
};

// Figures: "9", "11", "12", "13", "14", "table3". Each runs the matching
// reproduction and diffs it against fixtures/repro/<fig>.json. Failures are
// report content; throws only for an unknown figure (kValidationError) or
// unreadable fixtures.
ReproReport RunRepro(std::string_view figure, const ReproOptions& options);

// The device the table3 reproduction measures: the fixture device with the
// fixture's apps installed and their policies applied.
DeviceState LoadOverheadDevice(const std::filesystem::path& fixture_dir);

// Exact string comparison of collector rows (IMEI, latitude, longitude,
// date) against expected rows in a repro fixture. Both newest first.
std::vector<std::string> DiffCollectorRows(const std::vector<CollectorRow>& observed_newest_first,
                                           const nlohmann::json& expected_rows);

}  // namespace centerguard

#endif  // CENTERGUARD_REPRO_H_
