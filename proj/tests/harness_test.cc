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

#include <cmath>

#include "centerguard/app_runtime.h"
#include "centerguard/collector.h"
#include "centerguard/http_server.h"
#include "centerguard/json_io.h"
#include "centerguard/overhead.h"
#include "centerguard/repro.h"
#include "centerguard/scenarios.h"
#include "test_support.h"

namespace centerguard {
namespace {

using testing::At;
using testing::DeviceFx;
using testing::Manifest;

const std::string kTorch = "com.blogspot.jonappsblog.simpletorch";
const std::string kElixir = "com.bartat.android.elixir";

// ---- Torch exfiltration -------------------------------------------------------------

TEST(TorchScenarioTest, UnprotectedRowsCarryTruth) {
  auto fx = DeviceFx("torch_device");
  auto rows = RunTorchScenario(fx, Manifest("simple_torch"), TorchProtection::kNone, 5);
  ASSERT_EQ(rows.size(), 5u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].imei, "359548045784750");
    EXPECT_EQ(*rows[i].latitude, fx.gps_track[i].latitude);
    EXPECT_EQ(*rows[i].longitude, fx.gps_track[i].longitude);
    EXPECT_EQ(*rows[i].photo, "photo:" + std::to_string(i + 1));
    EXPECT_EQ(rows[i].date, "08 / 08 / 2014");
  }
}

TEST(TorchScenarioTest, ProtectionsAccumulate) {
  TorchScenario s(DeviceFx("torch_device"), Manifest("simple_torch"));
  s.Execute(1);
  s.Protect(TorchProtection::kPseudoLocation);
  s.Execute(1);
  s.Protect(TorchProtection::kPseudoLocationAndImei);
  s.Execute(1);
  auto rows = s.NewestFirst();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].imei, "123456");
  EXPECT_EQ(*rows[0].latitude, TorchPseudoLocation().latitude);
  EXPECT_EQ(rows[1].imei, "359548045784750");
  EXPECT_EQ(*rows[1].longitude, TorchPseudoLocation().longitude);
  EXPECT_EQ(rows[2].imei, "359548045784750");
  EXPECT_NE(*rows[2].latitude, TorchPseudoLocation().latitude);
}

TEST(TorchScenarioTest, FullBlockStillFlashesButShipsNoPhoto) {
  TorchScenario s(DeviceFx("torch_device"), Manifest("simple_torch"));
  s.Protect(TorchProtection::kFullBlockCamera);
  s.Execute(1);
  auto report = RunApp(s.device(), kTorch, nullptr);
  EXPECT_TRUE(report.flashed);
  auto rows = s.Rows();
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].photo.has_value());
}

TEST(TorchScenarioTest, NoNetworkNoExfiltration) {
  auto clock = std::make_shared<VirtualClock>(TorchScenarioStart());
  Device device(DeviceFx("torch_device").state, clock);
  device.InstallApp(Manifest("simple_torch"));
  Collector collector(clock);
  device.SetPermissionManual(kTorch, Permission::kNetwork, PermissionMode::Block());
  EXPECT_FALSE(RunApp(device, kTorch, &collector).exfiltrated);
  device.SetPermissionManual(kTorch, Permission::kNetwork, PermissionMode::Real());
  device.SetConnection(ConnectionType::kNone);
  EXPECT_FALSE(RunApp(device, kTorch, &collector).exfiltrated);
  device.SetConnection(ConnectionType::kGprs);
  EXPECT_TRUE(RunApp(device, kTorch, &collector).exfiltrated);
  EXPECT_EQ(collector.size(), 1u);
  EXPECT_CG_ERROR(RunApp(device, "com.none", &collector), ErrorCode::kUnknownApp);
}

TEST(TorchScenarioTest, ProtectionNames) {
  for (auto p : {TorchProtection::kNone, TorchProtection::kPseudoLocation, TorchProtection::kPseudoLocationAndImei,
                 TorchProtection::kFullBlockCamera}) {
    EXPECT_EQ(TorchProtectionFromName(TorchProtectionName(p)), p);
  }
  EXPECT_FALSE(TorchProtectionFromName("bogus"));
}

TEST(CollectorTest, TableRendersNewestFirst) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-08 10:00:00"));
  Collector c(clock);
  c.Post({"1", 1.0, 2.0, std::nullopt, std::nullopt});
  c.Post({"2", 3.0, 4.0, std::string("photo:1"), std::string("x=y")});
  std::string table = RenderCollectorTable(c.Rows());
  EXPECT_EQ(table.find("IMEI"), 0u);
  EXPECT_LT(table.find("\n2\t"), table.find("\n1\t"));
  EXPECT_EQ(CollectorRowFromJson(CollectorRowToJson(c.Rows()[1])), c.Rows()[1]);
}

TEST(CollectorTest, HttpRoundTrip) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-08 10:00:00"));
  Collector collector(clock);
  auto server = MakeCollectorServer(collector);
  server->Bind("127.0.0.1", 0);
  server->Start();
  HttpCollectorClient client("http://127.0.0.1:" + std::to_string(server->port()));
  client.Post({"359548045784750", 2.9451411, 56.7853837, std::string("photo:1"), std::nullopt});
  client.Post({"123456", -8.40917331462806, 115.18873499272713, std::nullopt, std::nullopt});
  auto rows = client.FetchNewestFirst();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].imei, "123456");
  EXPECT_EQ(FormatCoordinate(*rows[0].longitude), "115.18873499272713");
  EXPECT_EQ(rows, collector.NewestFirst());
  server->Stop();
}

// ---- Maps ---------------------------------------------------------------------------

TEST(MapsScenarioTest, DisplaysPerMode) {
  const std::string chrome = "com.android.chrome";
  const GeoPoint fake = TorchPseudoLocation();
  for (auto [mode, expect] :
       std::vector<std::pair<PermissionMode, std::optional<GeoPoint>>>{
           {PermissionMode::Real(), DeviceFx("torch_device").state.location},
           {PermissionMode::Pseudo(), fake},
           {PermissionMode::Block(), std::nullopt}}) {
    auto clock = std::make_shared<VirtualClock>(At("2014-08-08 10:00:00"));
    Device device(DeviceFx("torch_device").state, clock);
    device.InstallApp(Manifest("chrome"));
    device.SetPermissionManual(chrome, Permission::kLocation, mode);
    EXPECT_EQ(RunMapsScenario(device, chrome, fake), expect) << ModeTagName(mode.tag());
  }
}

// ---- Leakage probe ------------------------------------------------------------------

ProbeReport Probe(const LeakageConfig& config) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-08 10:00:00"));
  auto fx = DeviceFx("elixir_device");
  Device device(fx.state, clock);
  device.InstallApp(Manifest("elixir"));
  return RunLeakageProbe(device, kElixir, config);
}

TEST(LeakageProbeTest, AllRealShowsGroundTruth) {
  auto state = DeviceFx("elixir_device").state;
  ProbeReport r = Probe({});
  EXPECT_EQ(r.imei, state.imei.digits);
  EXPECT_EQ(r.mac, state.mac.text);
  EXPECT_EQ(r.ip, state.ip.text);
  EXPECT_EQ(r.address, state.address.text);
}

// Oracle: each field independently follows its permission's mode.
TEST(LeakageProbeTest, MixedConfigMatchesPerFieldOracle) {
  LeakageConfig config;
  config.modes.insert_or_assign(Permission::kDeviceId, PermissionMode::Block());
  config.modes.insert_or_assign(Permission::kLocation, PermissionMode::Real());
  config.modes.insert_or_assign(Permission::kNetwork, PermissionMode::Pseudo());
  config.modes.insert_or_assign(Permission::kStorage, PermissionMode::Pseudo(StreetAddress{"Elsewhere"}));
  config.pseudo_values[ParseResourceKey("NETWORK.ip")] = IpAddress::Parse("1.2.3.4");
  auto state = DeviceFx("elixir_device").state;
  ProbeReport r = Probe(config);
  EXPECT_FALSE(r.imei);
  EXPECT_EQ(r.location, DisplayValue(state.location));
  EXPECT_EQ(r.ip, "1.2.3.4");
  EXPECT_EQ(r.mac, DisplayValue(DefaultPseudoValue(ParseResourceKey("NETWORK.mac"))));
  EXPECT_EQ(r.address, "Elsewhere");
  EXPECT_EQ(ProbeReportFromJson(ProbeReportToJson(r)), r);
  EXPECT_TRUE(ProbeReportToJson(r)["imei"].is_null());
}

TEST(LeakageProbeTest, ConfigJsonRoundTrip) {
  auto fx = ReadJsonFile(testing::Fixture("repro/fig14.json"));
  LeakageConfig c = LeakageConfigFromJson(fx["config"]);
  EXPECT_EQ(c.modes.size(), 4u);
  EXPECT_EQ(c.pseudo_values.size(), 6u);
  LeakageConfig back = LeakageConfigFromJson(LeakageConfigToJson(c));
  EXPECT_EQ(back.modes, c.modes);
  EXPECT_EQ(back.pseudo_values, c.pseudo_values);
  EXPECT_CG_ERROR(LeakageConfigFromJson({{"modes", {{"CONTACTS", "Pseudo"}}}}), ErrorCode::kNotPseudoCapable);
}

// ---- Overhead -----------------------------------------------------------------------

TEST(OverheadTest, WorkloadIsDeterministicAndCoversInstalledApps) {
  DeviceState device = LoadOverheadDevice(testing::FixtureDir());
  auto a = MakeWorkload(device, 500, 1);
  auto b = MakeWorkload(device, 500, 1);
  auto c = MakeWorkload(device, 500, 2);
  ASSERT_EQ(a.size(), 500u);
  std::set<std::string> apps;
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].app, b[i].app);
    EXPECT_EQ(a[i].resource, b[i].resource);
    EXPECT_TRUE(device.FindApp(a[i].app)->Requests(a[i].resource.permission));
    apps.insert(a[i].app);
  }
  EXPECT_EQ(apps.size(), device.installed.size());
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) differs |= a[i].resource != c[i].resource;
  EXPECT_TRUE(differs);
}

TEST(OverheadTest, SmallRunReportsSaneStats) {
  DeviceState device = LoadOverheadDevice(testing::FixtureDir());
  auto workload = MakeWorkload(device, 5000, 3);
  OverheadStats s = MeasureOverhead(device, workload, 8);
  EXPECT_EQ(s.runs, 8u);
  EXPECT_EQ(s.fractions.size(), 8u);
  EXPECT_EQ(s.calls_per_run, 5000u);
  EXPECT_EQ(s.mediated_sequence_hash, s.unmediated_sequence_hash);
  EXPECT_GT(s.mean, 0.0);
  EXPECT_LT(s.mean, 1.0);
  EXPECT_GE(s.std_dev, 0.0);
  auto j = OverheadStatsToJson(s);
  EXPECT_EQ(j["unit"], "fraction");
}

TEST(OverheadTest, NullExperimentCentresOnZero) {
  DeviceState device = LoadOverheadDevice(testing::FixtureDir());
  auto workload = MakeWorkload(device, 5000, 3);
  OverheadStats s = MeasureOverhead(device, workload, 20, MediationMode::kPassthrough);
  EXPECT_LE(std::abs(s.mean), 3 * s.std_dev + 0.02);
}

TEST(OverheadTest, RejectsDegenerateInput) {
  DeviceState device = LoadOverheadDevice(testing::FixtureDir());
  auto workload = MakeWorkload(device, 10, 3);
  EXPECT_CG_ERROR(MeasureOverhead(device, workload, 1), ErrorCode::kValidationError);
  EXPECT_CG_ERROR(MeasureOverhead(device, {}, 5), ErrorCode::kValidationError);
}

}  // namespace
}  // namespace centerguard
