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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "centerguard/admin.h"
#include "centerguard/cloud_service.h"
#include "centerguard/http_server.h"
#include "centerguard/json_io.h"
#include "centerguard/scenario_runner.h"
#include "centerguard/scenario_script.h"
#include "test_support.h"

namespace centerguard {
namespace {

using testing::At;
using testing::Fixture;
using testing::FixtureDir;
using testing::Manifest;
using testing::TempDir;

// ---- scenario scripts -------------------------------------------------------------------

std::string ParseErrorOf(std::string_view text) {
  try {
    ParseScenario(text, "s.scn");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    return e.what();
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return "";
}

TEST(ScenarioScriptTest, ParsesEventsCommentsAndQuotes) {
  auto s = ParseScenario(
      "# comment\n"
      "\n"
      "2014-08-01 08:00:00 device devices/fleet_device.json\n"
      "2014-08-01 08:00:00 set-pseudo STORAGE \"Jalan Bangi 3\"\n"
      "2014-08-01 08:00:01 run-app com.x 3\n");
  ASSERT_EQ(s.events.size(), 3u);
  EXPECT_EQ(s.events[1].action, ScenarioAction::kSetPseudo);
  EXPECT_EQ(s.events[1].args, (std::vector<std::string>{"STORAGE", "Jalan Bangi 3"}));
  EXPECT_EQ(s.events[2].line, 5u);
  EXPECT_EQ(s.events[2].at, At("2014-08-01 08:00:01"));
  EXPECT_FALSE(s.NeedsCloud());
  EXPECT_TRUE(ParseScenario("2014-08-01 08:00:00 sync\n").NeedsCloud());
}

TEST(ScenarioScriptTest, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(ParseErrorOf("2014-08-01 08:00:00 fly\n"), "s.scn:1:21: unknown action 'fly'");
  EXPECT_NE(ParseErrorOf("\n2014-08-01 08:00:00 move 1\n").find("s.scn:2:"), std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 08:00:00 move 1 north\n").find("s.scn:1:28:"), std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 09:00:00 tick\n2014-08-01 08:00:00 tick\n").find("backwards"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 08:00:00 tick\n2014-08-01 08:00:00 device d.json\n").find("first"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-13-01 08:00:00 tick\n").find("timestamp"), std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 08:00:00 set-pseudo STORAGE \"open\n").find("unterminated"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 08:00:00 set-permission p BOGUS real\n").find("unknown permission"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf("2014-08-01 08:00:00 set-permission p LOCATION real 1 2\n").find("only pseudo"),
            std::string::npos);
}

TEST(ScenarioScriptTest, ValueArgs) {
  std::vector<std::string> loc = {"-8.40917331462806", "115.18873499272713"};
  EXPECT_EQ(ParseValueArgs(ParseResourceKey("LOCATION"), loc),
            ResourceValue(GeoPoint::Make(-8.40917331462806, 115.18873499272713)));
  std::vector<std::string> blocked = {"blocked"};
  EXPECT_EQ(ParseValueArgs(ParseResourceKey("NETWORK.connection"), blocked), ResourceValue(ConnectionState{false}));
  std::vector<std::string> bad = {"not-an-ip"};
  EXPECT_CG_ERROR(ParseValueArgs(ParseResourceKey("NETWORK.ip"), bad), ErrorCode::kInvalidValue);
}

// ---- scenario runner ----------------------------------------------------------------------

RunnerOptions Options() {
  RunnerOptions o;
  o.base_dir = FixtureDir() / "scenarios";
  o.fixture_dir = FixtureDir();
  o.default_device = Fixture("devices/default_device.json");
  return o;
}

TEST(ScenarioRunnerTest, EmptyScenarioScoresFullMarks) {
  auto report = RunScenario(LoadScenario(Fixture("scenarios/empty.scn")), Options(), nullptr);
  EXPECT_EQ(report["events"].size(), 0u);
  EXPECT_EQ(report["final_score"]["value"], 100);
  EXPECT_EQ(report["final_score"]["band"], "Green");
  EXPECT_EQ(report["imei"], "359548045784999");
}

TEST(ScenarioRunnerTest, TorchScriptIsDeterministic) {
  auto script = LoadScenario(Fixture("scenarios/torch_unprotected.scn"));
  auto a = RunScenario(script, Options(), nullptr);
  auto b = RunScenario(script, Options(), nullptr);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a["collector_rows"].size(), 5u);
  EXPECT_EQ(a["collector_rows"][0]["latitude"], 2.9451411);
  EXPECT_EQ(a["audit"].size(), 20u);  // DEVICE_ID, LOCATION, CAMERA, NETWORK.connection per run
  EXPECT_EQ(a["final_time"], "2014-08-08 10:05:00");
  EXPECT_EQ(a["final_score"]["value"], 0);
}

TEST(ScenarioRunnerTest, PseudoScriptMatchesFig13) {
  auto report = RunScenario(LoadScenario(Fixture("scenarios/torch_pseudo.scn")), Options(), nullptr);
  auto expected = ReadJsonFile(Fixture("repro/fig13.json"))["rows"];
  const auto& rows = report["collector_rows"];
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0]["imei"], "123456");
  EXPECT_EQ(FormatCoordinate(rows[0]["longitude"].get<double>()), "115.18873499272713");
  EXPECT_EQ(rows[1]["imei"], "359548045784750");
  EXPECT_EQ(FormatCoordinate(rows[1]["latitude"].get<double>()), "-8.40917331462806");
}

TEST(ScenarioRunnerTest, CloudlessSyncFailsWithLine) {
  auto script = ParseScenario("2014-08-01 08:00:00 set-mode autopilot\n2014-08-01 08:00:01 sync\n");
  try {
    RunScenario(script, Options(), nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCloudUnreachable);
    EXPECT_NE(std::string(e.what()).find("line 2 (sync)"), std::string::npos) << e.what();
  }
}

TEST(ScenarioRunnerTest, AutopilotBackupAgainstCloud) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-01 00:00:00"));
  CloudService cloud(clock, std::nullopt);
  for (const auto& n : {"timely", "chrome", "electric_screen"}) {
    cloud.PutPolicy(PolicyFromJson(ReadJsonFile(Fixture(std::string("policies/") + n + ".json"))));
  }
  auto report = RunScenario(LoadScenario(Fixture("scenarios/autopilot_backup.scn")), Options(), &cloud);
  ASSERT_EQ(report["sync_reports"].size(), 1u);
  EXPECT_EQ(report["sync_reports"][0]["elapsed_seconds"], 12);
  std::vector<std::string> outcomes;
  for (const auto& e : report["events"]) {
    if (e["action"] == "tick") outcomes.push_back(e["result"]["outcome"]);
  }
  EXPECT_EQ(outcomes, (std::vector<std::string>{"Uploaded", "SkippedNetworkGate"}));
  EXPECT_EQ(cloud.FetchBackup("359548045784860").created_at, At("2014-08-01 09:00:00"));
}

TEST(ScenarioRunnerTest, UnknownFixtureIsAnError) {
  auto script = ParseScenario("2014-08-01 08:00:00 install manifests/nope.json\n");
  EXPECT_THROW(RunScenario(script, Options(), nullptr), Error);
}

// ---- admin helpers --------------------------------------------------------------------------

TEST(AdminTest, TableHasFigureColumns) {
  Consultation c;
  c.id = "c-000001";
  c.app_name = "SimpleTorch";
  c.package = "com.blogspot.jonappsblog.simpletorch";
  c.imei = "359548045784860";
  c.created_date = At("2014-08-01 08:00:00");
  std::string table = RenderConsultationTable({c}, "http://h:1");
  EXPECT_EQ(table.substr(0, table.find('\n')), "App Name\tPackage Name\tImei\tStatus\tApk Link\tCreated Date");
  EXPECT_NE(table.find("SimpleTorch\tcom.blogspot.jonappsblog.simpletorch\t359548045784860\tNot Sent\t"
                       "http://h:1/consultations/c-000001/apk\t2014-08-01 08:00:00"),
            std::string::npos)
      << table;
}

TEST(AdminTest, DecideCheckedValidatesBeforeCalling) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-01 08:00:00"));
  CloudService cloud(clock, std::nullopt);
  auto manifest = FindManifestForPackage(FixtureDir() / "manifests", "com.blogspot.jonappsblog.simpletorch");
  ASSERT_TRUE(manifest);
  EXPECT_EQ(manifest->app_name, "SimpleTorch");
  EXPECT_FALSE(FindManifestForPackage(FixtureDir() / "manifests", "com.none"));
  auto incomplete = PolicyFromJson(ReadJsonFile(Fixture("policies/simple_torch_incomplete.json")));
  // Unknown id, but validation fails first.
  EXPECT_CG_ERROR(DecideChecked(cloud, "c-000009", incomplete, manifest), ErrorCode::kValidationError);
  auto good = PolicyFromJson(ReadJsonFile(Fixture("policies/simple_torch_protected.json")));
  EXPECT_CG_ERROR(DecideChecked(cloud, "c-000009", good, manifest), ErrorCode::kNotFound);
}

// ---- the binary -------------------------------------------------------------------------------

struct CliRun {
  int exit_code;
  std::string output;
};

CliRun Exec(const std::string& args) {
  std::string cmd = std::string(CENTERGUARD_BINARY) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(BinaryTest, ReproFiguresPass) {
  for (const char* fig : {"9", "11", "12", "13", "14"}) {
    CliRun r = Exec(std::string("repro ") + fig);
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find(std::string("repro ") + fig + ": PASS"), std::string::npos) << r.output;
  }
  CliRun j = Exec("repro 11 --json");
  EXPECT_EQ(nlohmann::json::parse(j.output)["pass"], true);
  EXPECT_NE(Exec("repro 10").exit_code, 0);
}

TEST(BinaryTest, ReproTable3SmallRun) {
  CliRun r = Exec("repro table3 --runs 4 --calls 5000");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("(fraction)"), std::string::npos) << r.output;
}

TEST(BinaryTest, DeviceRunWritesReportAndAudit) {
  TempDir dir;
  const auto report = dir.path() / "report.json";
  const auto audit = dir.path() / "audit.jsonl";
  CliRun r = Exec("device run " + Fixture("scenarios/torch_unprotected.scn").string() + " --report " +
               report.string() + " --audit-out " + audit.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.output, "7 events, 5 collector rows, final score 0 (Red)\n");
  EXPECT_EQ(ReadJsonFile(report)["collector_rows"].size(), 5u);
  std::ifstream in(audit);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 20);
  // Stdout report is identical across runs (virtual clock).
  CliRun a = Exec("device run " + Fixture("scenarios/torch_pseudo.scn").string());
  CliRun b = Exec("device run " + Fixture("scenarios/torch_pseudo.scn").string());
  EXPECT_EQ(a.exit_code, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
}

TEST(BinaryTest, DeviceRunParseErrorAndOffline) {
  TempDir dir;
  const auto bad = dir.path() / "bad.scn";
  WriteTextFile(bad, "2014-08-01 08:00:00 fly\n");
  CliRun r = Exec("device run " + bad.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("error: ParseError: " + bad.string() + ":1:21:"), std::string::npos) << r.output;
  CliRun off = Exec("device run --offline " + Fixture("scenarios/autopilot_backup.scn").string());
  EXPECT_EQ(off.exit_code, 1);
  EXPECT_NE(off.output.find("CloudUnreachable"), std::string::npos) << off.output;
}

TEST(BinaryTest, AdminAgainstLiveCloud) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-01 08:00:00"));
  CloudService cloud(clock, std::nullopt);
  auto server = MakeCloudServer(cloud, std::string("sekret"));
  server->Bind("127.0.0.1", 0);
  server->Start();
  const std::string url = "--cloud-url http://127.0.0.1:" + std::to_string(server->port());
  const std::string admin = url + " --admin-token sekret admin ";

  cloud.RegisterDevice("359548045784860", DeviceMode::kAutopilot);
  AppManifest m = Manifest("simple_torch");
  Consultation c = cloud.SubmitConsultation({"359548045784860", m.app_name, m.package, m.version, "", m});

  CliRun denied = Exec(url + " admin list");
  EXPECT_EQ(denied.exit_code, 1);
  EXPECT_NE(denied.output.find("Unauthorized"), std::string::npos) << denied.output;

  CliRun list = Exec(admin + "list --status NotSent");
  EXPECT_EQ(list.exit_code, 0) << list.output;
  EXPECT_NE(list.output.find("SimpleTorch\tcom.blogspot.jonappsblog.simpletorch\t359548045784860\tNot Sent"),
            std::string::npos)
      << list.output;

  CliRun incomplete = Exec(admin + "decide " + c.id + " " + Fixture("policies/simple_torch_incomplete.json").string());
  EXPECT_EQ(incomplete.exit_code, 1);
  EXPECT_NE(incomplete.output.find("ValidationError"), std::string::npos) << incomplete.output;
  EXPECT_EQ(cloud.GetConsultation(c.id).status, ConsultationStatus::kNotSent);

  EXPECT_EQ(Exec(admin + "review " + c.id).output, c.id + " " + m.package + " UnderReview\n");
  CliRun decide = Exec(admin + "decide " + c.id + " " + Fixture("policies/simple_torch_protected.json").string());
  EXPECT_EQ(decide.output, c.id + " " + m.package + " Pushed\n");
  CliRun again = Exec(admin + "decide " + c.id + " " + Fixture("policies/simple_torch_protected.json").string());
  EXPECT_NE(again.output.find("AlreadyDecided"), std::string::npos) << again.output;

  CliRun msg = Exec(admin + "push-message 359548045784860 \"hello there\"");
  EXPECT_EQ(msg.exit_code, 0) << msg.output;
  auto notes = cloud.PollNotifications("359548045784860", 0);
  ASSERT_EQ(notes.size(), 3u);
  EXPECT_EQ(notes[2].payload["text"], "hello there");
  server->Stop();
}

TEST(BinaryTest, ServeRefusesCorruptStoreAndBusyPort) {
  TempDir dir;
  WriteTextFile(dir.path() / "devices.jsonl", "{\"imei\":\n");
  CliRun corrupt = Exec("--store " + dir.path().string() + " cloud serve --port 0");
  EXPECT_EQ(corrupt.exit_code, 1);
  EXPECT_NE(corrupt.output.find("StoreCorrupt"), std::string::npos) << corrupt.output;
  EXPECT_NE(corrupt.output.find("devices.jsonl:1:"), std::string::npos) << corrupt.output;

  auto clock = std::make_shared<VirtualClock>(At("2014-08-01 08:00:00"));
  CloudService cloud(clock, std::nullopt);
  auto server = MakeCloudServer(cloud, std::nullopt);
  int port = server->Bind("127.0.0.1", 0);
  TempDir store;
  CliRun busy = Exec("--store " + store.path().string() + " cloud serve --port " + std::to_string(port));
  EXPECT_EQ(busy.exit_code, 1);
  EXPECT_NE(busy.output.find("PortInUse"), std::string::npos) << busy.output;
}

}  // namespace
}  // namespace centerguard
