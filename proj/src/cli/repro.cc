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

#include "centerguard/repro.h"

#include <fmt/format.h>

#include <chrono>

#include "centerguard/errors.h"
#include "centerguard/json_io.h"
#include "centerguard/manifest.h"
#include "centerguard/overhead.h"
#include "centerguard/scenarios.h"

namespace centerguard {
namespace {

using nlohmann::json;

std::string CellOf(const std::optional<double>& v) { return v ? FormatCoordinate(*v) : ""; }

json RowsJson(const std::vector<CollectorRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(CollectorRowToJson(r));
  return out;
}

struct RowCells {
  std::string imei, latitude, longitude, date;
  bool operator==(const RowCells&) const = default;
};

RowCells Cells(const CollectorRow& r) { return {r.imei, CellOf(r.latitude), CellOf(r.longitude), r.date}; }
RowCells Cells(const json& j) {
  return {j.at("imei").get<std::string>(), j.at("latitude").get<std::string>(),
          j.at("longitude").get<std::string>(), j.at("date").get<std::string>()};
}
std::string Show(const RowCells& c) {
  return fmt::format("({}, {}, {}, {})", c.imei, c.latitude, c.longitude, c.date);
}

// Expected rows must appear, in order, within the observed rows.
bool IsOrderedSubsequence(const std::vector<CollectorRow>& observed, const json& expected) {
  size_t k = 0;
  for (const auto& row : observed) {
    if (k < expected.size() && Cells(row) == Cells(expected[k])) ++k;
  }
  return k == expected.size();
}

ReproReport TorchRepro(const std::string& figure, const std::filesystem::path& dir) {
  json fx = ReadJsonFile(dir / "repro" / ("fig" + figure + ".json"));
  auto started = std::chrono::steady_clock::now();
  TorchScenario scenario(LoadDeviceFixture(dir / fx.at("device").get<std::string>()),
                         LoadManifest(dir / fx.at("manifest").get<std::string>()),
                         *ParseTimestamp(fx.at("start").get<std::string>()));
  for (const auto& step : fx.at("steps")) {
    if (step.contains("execute")) scenario.Execute(step["execute"].get<int>());
    if (step.contains("protect")) {
      auto p = TorchProtectionFromName(step["protect"].get<std::string>());
      if (!p) throw Error(ErrorCode::kValidationError, "unknown protection in fixture");
      scenario.Protect(*p);
    }
  }
  auto elapsed = std::chrono::steady_clock::now() - started;
  auto rows = scenario.NewestFirst();

  ReproReport report{figure, {}, {{"rows", RowsJson(rows)}}};
  auto diffs = DiffCollectorRows(rows, fx.at("rows"));
  report.checks.push_back({"collector table matches fixture", diffs.empty(),
                           diffs.empty() ? fmt::format("{} rows", rows.size()) : diffs.front()});
  if (fx.contains("excerpt_rows")) {
    bool sub = IsOrderedSubsequence(rows, fx["excerpt_rows"]);
    report.checks.push_back({"figure excerpt appears in order", sub,
                             fmt::format("{} figure rows", fx["excerpt_rows"].size())});
  }
  double ms = std::chrono::duration<double, std::milli>(elapsed).count();
  report.checks.push_back({"runtime under 5 s", ms < 5000.0, fmt::format("{:.1f} ms", ms)});
  return report;
}

ReproReport MapsRepro(const std::filesystem::path& dir) {
  json fx = ReadJsonFile(dir / "repro" / "fig9.json");
  DeviceFixture fixture = LoadDeviceFixture(dir / fx.at("device").get<std::string>());
  AppManifest browser = LoadManifest(dir / fx.at("manifest").get<std::string>());
  GeoPoint pseudo = GeoPoint::Make(fx["pseudo_location"].at("latitude").get<double>(),
                                   fx["pseudo_location"].at("longitude").get<double>());
  ReproReport report{"9", {}, json::object()};
  for (const auto& [mode_name, expected] : fx.at("expected").items()) {
    auto clock = std::make_shared<VirtualClock>(TorchScenarioStart());
    DeviceState state = fixture.state;
    state.mode = DeviceMode::kAdvanced;
    Device device(state, clock);
    device.InstallApp(browser);
    ModeTag tag = *ModeTagFromName(mode_name);
    PermissionMode mode = tag == ModeTag::kPseudo  ? PermissionMode::Pseudo()
                          : tag == ModeTag::kBlock ? PermissionMode::Block()
                                                   : PermissionMode::Real();
    device.SetPermissionManual(browser.package, Permission::kLocation, mode);
    auto shown = RunMapsScenario(device, browser.package, pseudo);
    json observed = shown ? json(DisplayValue(*shown)) : json();
    report.observed[mode_name] = observed;
    report.checks.push_back({"displayed location under " + mode_name, observed == expected,
                             fmt::format("shown {} expected {}", observed.dump(), expected.dump())});
  }
  return report;
}

ReproReport LeakageRepro(const std::filesystem::path& dir) {
  json fx = ReadJsonFile(dir / "repro" / "fig14.json");
  DeviceFixture fixture = LoadDeviceFixture(dir / fx.at("device").get<std::string>());
  AppManifest probe = LoadManifest(dir / fx.at("manifest").get<std::string>());
  auto clock = std::make_shared<VirtualClock>(TorchScenarioStart());
  fixture.state.mode = DeviceMode::kAdvanced;
  Device device(std::move(fixture.state), clock);
  device.InstallApp(probe);
  ProbeReport observed = RunLeakageProbe(device, probe.package, LeakageConfigFromJson(fx.at("config")));
  json observed_json = ProbeReportToJson(observed);
  ReproReport report{"14", {}, {{"probe_report", observed_json}}};
  for (const auto& field : fx.at("checked_fields")) {
    const std::string name = field.get<std::string>();
    const json& want = fx.at("expected").at(name);
    const json& got = observed_json.at(name);
    report.checks.push_back({"probe field " + name, got == want,
                             fmt::format("observed {} expected {}", got.dump(), want.dump())});
  }
  return report;
}

DeviceState OverheadDeviceFrom(const std::filesystem::path& dir, const json& fx) {
  DeviceFixture fixture = LoadDeviceFixture(dir / fx.at("device").get<std::string>());
  auto clock = std::make_shared<VirtualClock>(TorchScenarioStart());
  fixture.state.mode = DeviceMode::kAdvanced;
  Device device(std::move(fixture.state), clock);
  for (const auto& app : fx.at("apps")) {
    AppManifest manifest = LoadManifest(dir / app.at("manifest").get<std::string>());
    device.InstallApp(manifest);
    if (app.contains("policy")) {
      device.ApplyPushedPolicy(manifest.package, PolicyFromJson(ReadJsonFile(dir / app["policy"].get<std::string>())));
    }
  }
  return device.Snapshot();
}

ReproReport OverheadRepro(const ReproOptions& options) {
  const auto& dir = options.fixture_dir;
  json fx = ReadJsonFile(dir / "repro" / "table3.json");
  const size_t runs = options.runs.value_or(fx.at("runs").get<size_t>());
  const size_t calls = options.calls.value_or(fx.at("calls").get<size_t>());
  const double bound = fx.at("bound").get<double>();
  DeviceState device = OverheadDeviceFrom(dir, fx);
  auto workload = MakeWorkload(device, calls, fx.at("seed").get<std::uint64_t>());
  OverheadStats stats = MeasureOverhead(device, workload, runs);

  ReproReport report{"table3", {}, OverheadStatsToJson(stats)};
  report.checks.push_back({"runs completed", stats.runs == runs, fmt::format("{} of {}", stats.runs, runs)});
  report.checks.push_back({"identical request sequences",
                           stats.mediated_sequence_hash == stats.unmediated_sequence_hash,
                           fmt::format("{} calls per run", stats.calls_per_run)});
  report.checks.push_back({"overhead fraction below pinned bound", stats.mean < bound,
                           fmt::format("mean {:.4f} std {:.4f} (fraction) bound {}", stats.mean, stats.std_dev,
                                       bound)});
  return report;
}

}  // namespace

bool ReproReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string ReproReport::Render() const {
  std::string out;
  for (const auto& c : checks) {
    out += fmt::format("  [{}] {}: {}\n", c.pass ? "ok" : "FAIL", c.name, c.detail);
  }
  out += fmt::format("repro {}: {}\n", figure, pass() ? "PASS" : "FAIL");
  return out;
}

json ReproReportToJson(const ReproReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"figure", r.figure}, {"pass", r.pass()}, {"checks", checks}, {"observed", r.observed}};
}

DeviceState LoadOverheadDevice(const std::filesystem::path& fixture_dir) {
  return OverheadDeviceFrom(fixture_dir, ReadJsonFile(fixture_dir / "repro" / "table3.json"));
}

std::vector<std::string> DiffCollectorRows(const std::vector<CollectorRow>& observed, const json& expected) {
  std::vector<std::string> diffs;
  if (observed.size() != expected.size()) {
    diffs.push_back(fmt::format("row count {} != expected {}", observed.size(), expected.size()));
  }
  for (size_t i = 0; i < std::min(observed.size(), expected.size()); ++i) {
    RowCells got = Cells(observed[i]);
    RowCells want = Cells(expected[i]);
    if (got != want) diffs.push_back(fmt::format("row {}: {} != expected {}", i + 1, Show(got), Show(want)));
  }
  return diffs;
}

ReproReport RunRepro(std::string_view figure, const ReproOptions& options) {
  if (figure == "9") return MapsRepro(options.fixture_dir);
  if (figure == "11" || figure == "12" || figure == "13") return TorchRepro(std::string(figure), options.fixture_dir);
  if (figure == "14") return LeakageRepro(options.fixture_dir);
  if (figure == "table3") return OverheadRepro(options);
  throw Error(ErrorCode::kValidationError,
              "unknown figure '" + std::string(figure) + "' (expected 9, 11, 12, 13, 14 or table3)");
}

}  // namespace centerguard
