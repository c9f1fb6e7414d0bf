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

#include <fstream>

#include "httplib.h"

#include "centerguard/cloud_service.h"
#include "centerguard/http_cloud_client.h"
#include "centerguard/http_server.h"
#include "centerguard/json_io.h"
#include "centerguard/record_store.h"
#include "test_support.h"

namespace centerguard {
namespace {

using testing::At;
using testing::Manifest;
using testing::TempDir;

const std::string kImei = "359548045784860";

AppPolicy PolicyFixture(const std::string& name) {
  return PolicyFromJson(ReadJsonFile(testing::Fixture("policies/" + name + ".json")));
}

ConsultationRequest TorchRequest(const std::string& imei = kImei) {
  AppManifest m = Manifest("simple_torch");
  return {imei, m.app_name, m.package, m.version, "", m};
}

class CloudTest : public ::testing::Test {
 protected:
  std::shared_ptr<VirtualClock> clock_ = std::make_shared<VirtualClock>(At("2014-08-01 08:00:00"));
};

// ---- record store ---------------------------------------------------------------------

TEST(RecordStoreTest, AppendsAndReloads) {
  TempDir dir;
  {
    RecordStore store(dir.path());
    store.Append("t", {{"a", 1}});
    store.Append("t", {{"a", 2}});
  }
  RecordStore store(dir.path());
  auto records = store.Load("t");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1]["a"], 2);
  EXPECT_TRUE(store.Load("missing").empty());
}

TEST(RecordStoreTest, CorruptLineNamesFileAndLine) {
  TempDir dir;
  {
    std::ofstream out(dir.path() / "t.jsonl");
    out << "{\"a\":1}\n{not json\n";
  }
  RecordStore store(dir.path());
  try {
    store.Load("t");
    FAIL() << "expected StoreCorrupt";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStoreCorrupt);
    EXPECT_NE(std::string(e.what()).find("t.jsonl:2:"), std::string::npos) << e.what();
  }
}

TEST(RecordStoreTest, TornTrailingLineIsDroppedAndTruncated) {
  TempDir dir;
  {
    std::ofstream out(dir.path() / "t.jsonl");
    out << "{\"a\":1}\n{\"a\":";
  }
  RecordStore store(dir.path());
  auto records = store.Load("t");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0]["a"], 1);
  store.Append("t", {{"a", 3}});
  records = RecordStore(dir.path()).Load("t");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1]["a"], 3);
}

// ---- cloud service ----------------------------------------------------------------------

TEST_F(CloudTest, RegistrationValidatesImei) {
  CloudService cloud(clock_, std::nullopt);
  EXPECT_CG_ERROR(cloud.RegisterDevice("35954x", DeviceMode::kAutopilot), ErrorCode::kMalformedImei);
  EXPECT_EQ(cloud.RegisterDevice(kImei, DeviceMode::kAutopilot).registered_at, clock_->Now());
  EXPECT_CG_ERROR(cloud.SubmitConsultation(TorchRequest("111")), ErrorCode::kUnregisteredDevice);
}

TEST_F(CloudTest, ConsultationLifecycleAndErrors) {
  CloudService cloud(clock_, std::nullopt);
  cloud.RegisterDevice(kImei, DeviceMode::kAutopilot);
  Consultation c = cloud.SubmitConsultation(TorchRequest());
  EXPECT_EQ(c.status, ConsultationStatus::kNotSent);
  EXPECT_EQ(c.apk_ref, Manifest("simple_torch").ContentHash());
  // Resubmission while open coalesces.
  EXPECT_EQ(cloud.SubmitConsultation(TorchRequest()).id, c.id);
  EXPECT_CG_ERROR(cloud.MarkApplied(c.id), ErrorCode::kInvalidTransition);
  EXPECT_CG_ERROR(cloud.GetConsultation("c-999999"), ErrorCode::kNotFound);

  EXPECT_EQ(cloud.MarkUnderReview(c.id).status, ConsultationStatus::kUnderReview);
  EXPECT_CG_ERROR(cloud.AdminDecide(c.id, PolicyFixture("simple_torch_incomplete")), ErrorCode::kValidationError);
  EXPECT_CG_ERROR(cloud.AdminDecide(c.id, PolicyFixture("chrome")), ErrorCode::kValidationError);
  EXPECT_EQ(cloud.GetConsultation(c.id).status, ConsultationStatus::kUnderReview);

  clock_->Advance(Seconds{30});
  Consultation d = cloud.AdminDecide(c.id, PolicyFixture("simple_torch_protected"));
  EXPECT_EQ(d.status, ConsultationStatus::kPushed);
  EXPECT_CG_ERROR(cloud.AdminDecide(c.id, PolicyFixture("simple_torch_protected")), ErrorCode::kAlreadyDecided);
  // The decision joins the knowledge base.
  auto rec = cloud.GetPolicy(d.package, std::nullopt);
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->policy, PolicyFixture("simple_torch_protected"));
  EXPECT_EQ(rec->moderated_at, clock_->Now());

  auto notes = cloud.PollNotifications(kImei, 0);
  ASSERT_EQ(notes.size(), 2u);
  EXPECT_EQ(notes[0].kind, NotificationKind::kSettingsPush);
  EXPECT_EQ(notes[1].payload["text"], "SimpleTorch is ready and safe to use");
  EXPECT_EQ(cloud.MarkApplied(c.id).status, ConsultationStatus::kApplied);
  EXPECT_CG_ERROR(cloud.MarkApplied(c.id), ErrorCode::kInvalidTransition);
  // Once closed, a new submission opens a fresh consultation.
  EXPECT_NE(cloud.SubmitConsultation(TorchRequest()).id, c.id);

  auto history = cloud.GetConsultation(c.id).history;
  ASSERT_EQ(history.size(), 5u);
  for (size_t i = 1; i < history.size(); ++i) {
    EXPECT_TRUE(IsValidTransition(history[i - 1].status, history[i].status));
  }
}

TEST_F(CloudTest, ListFiltersByStatus) {
  CloudService cloud(clock_, std::nullopt);
  cloud.RegisterDevice(kImei, DeviceMode::kAutopilot);
  cloud.RegisterDevice("359548045784999", DeviceMode::kAutopilot);
  auto a = cloud.SubmitConsultation(TorchRequest());
  cloud.SubmitConsultation(TorchRequest("359548045784999"));
  cloud.MarkUnderReview(a.id);
  EXPECT_EQ(cloud.ListConsultations(std::nullopt).size(), 2u);
  EXPECT_EQ(cloud.ListConsultations(ConsultationStatus::kNotSent).size(), 1u);
  EXPECT_EQ(cloud.ListConsultations(ConsultationStatus::kUnderReview).front().id, a.id);
}

TEST_F(CloudTest, LatestModeratedPolicyWins) {
  CloudService cloud(clock_, std::nullopt);
  AppPolicy v1 = PolicyFixture("chrome");
  AppPolicy v2 = v1;
  v2.version = "2.0";
  v2.entries.insert_or_assign(Permission::kLocation, PermissionMode::Block());
  cloud.PutPolicy(v2);
  clock_->Advance(Seconds{1});
  cloud.PutPolicy(v1);
  EXPECT_EQ(cloud.GetPolicy(v1.package, std::nullopt)->version, v1.version);
  EXPECT_EQ(cloud.GetPolicy(v1.package, std::string("2.0"))->policy, v2);
  EXPECT_FALSE(cloud.GetPolicy(v1.package, std::string("9.9")));
  EXPECT_FALSE(cloud.GetPolicy("com.unknown", std::nullopt));
}

TEST_F(CloudTest, MessagesBackupsAndFleetScore) {
  CloudService cloud(clock_, std::nullopt);
  EXPECT_CG_ERROR(cloud.PushMessage(kImei, "hi"), ErrorCode::kUnregisteredDevice);
  cloud.RegisterDevice(kImei, DeviceMode::kAutopilot);
  Notification n = cloud.PushMessage(kImei, "hello");
  EXPECT_EQ(n.kind, NotificationKind::kMessage);
  EXPECT_EQ(cloud.PollNotifications(kImei, 0).size(), 1u);
  EXPECT_TRUE(cloud.PollNotifications(kImei, n.sequence).empty());

  EXPECT_CG_ERROR(cloud.FetchBackup(kImei), ErrorCode::kNoBackup);
  EXPECT_EQ(cloud.FleetSummary().front().score.value, 100);
  BackupPayload b{kImei, clock_->Now(), {{"p", PolicyFixture("simple_torch_protected")}}, {}};
  b.policies.begin()->second.package = "p";
  EXPECT_EQ(cloud.StoreBackup(kImei, b).version, 1u);
  EXPECT_EQ(cloud.StoreBackup(kImei, b).version, 2u);
  EXPECT_EQ(cloud.FetchBackup(kImei), b);
  EXPECT_CG_ERROR(cloud.StoreBackup(kImei, BackupPayload{"1", clock_->Now(), {}, {}}), ErrorCode::kValidationError);
  // CAMERA Real (2) unprotected; DEVICE_ID 3 + LOCATION 3 + NETWORK 1 protected -> 7/9.
  EXPECT_EQ(cloud.FleetSummary().front().score.value, 78);
}

TEST_F(CloudTest, StateSurvivesRestart) {
  TempDir dir;
  std::string id;
  {
    CloudService cloud(clock_, dir.path());
    cloud.RegisterDevice(kImei, DeviceMode::kAutopilot);
    id = cloud.SubmitConsultation(TorchRequest()).id;
    cloud.AdminDecide(id, PolicyFixture("simple_torch_protected"));
    cloud.PutPolicy(PolicyFixture("chrome"));
    cloud.StoreBackup(kImei, BackupPayload{kImei, clock_->Now(), {}, {}});
    cloud.PushMessage(kImei, "hello");
  }
  CloudService cloud(clock_, dir.path());
  EXPECT_TRUE(cloud.FindDevice(kImei)->last_backup_at);
  Consultation c = cloud.GetConsultation(id);
  EXPECT_EQ(c.status, ConsultationStatus::kPushed);
  EXPECT_EQ(c.history.size(), 4u);
  EXPECT_TRUE(cloud.GetPolicy("com.android.chrome", std::nullopt));
  EXPECT_TRUE(cloud.GetPolicy(c.package, std::nullopt));
  EXPECT_EQ(cloud.PollNotifications(kImei, 0).size(), 3u);
  EXPECT_EQ(cloud.FetchBackup(kImei).imei, kImei);
  cloud.MarkApplied(id);
  EXPECT_NE(cloud.SubmitConsultation(TorchRequest()).id, id);
}

TEST_F(CloudTest, CorruptStoreRefusesToStart) {
  TempDir dir;
  {
    CloudService cloud(clock_, dir.path());
    cloud.RegisterDevice(kImei, DeviceMode::kAutopilot);
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    std::ofstream(entry.path(), std::ios::app) << "garbage\n";
  }
  EXPECT_CG_ERROR(CloudService(clock_, dir.path()), ErrorCode::kStoreCorrupt);
}

// ---- HTTP ---------------------------------------------------------------------------------

class HttpTest : public CloudTest {
 protected:
  void SetUp() override {
    cloud_ = std::make_unique<CloudService>(clock_, std::nullopt);
    server_ = MakeCloudServer(*cloud_, std::string("tok"));
    server_->Bind("127.0.0.1", 0);
    server_->Start();
    url_ = "http://127.0.0.1:" + std::to_string(server_->port());
  }
  void TearDown() override { server_->Stop(); }
  std::unique_ptr<CloudService> cloud_;
  std::unique_ptr<HttpServer> server_;
  std::string url_;
};

TEST_F(HttpTest, ClientRoundTripsTheLifecycle) {
  HttpCloudClient device(url_);
  HttpCloudClient admin(url_, std::string("tok"));
  EXPECT_EQ(device.RegisterDevice(kImei, DeviceMode::kAutopilot).imei, kImei);
  EXPECT_FALSE(device.GetPolicy("com.blogspot.jonappsblog.simpletorch", std::nullopt));
  Consultation c = device.SubmitConsultation(TorchRequest());
  EXPECT_EQ(admin.GetConsultation(c.id), cloud_->GetConsultation(c.id));
  EXPECT_EQ(admin.ListConsultations(ConsultationStatus::kNotSent).size(), 1u);
  EXPECT_EQ(admin.MarkUnderReview(c.id).status, ConsultationStatus::kUnderReview);
  EXPECT_EQ(admin.AdminDecide(c.id, PolicyFixture("simple_torch_protected")).status, ConsultationStatus::kPushed);
  auto notes = device.PollNotifications(kImei, 0);
  ASSERT_EQ(notes.size(), 2u);
  EXPECT_EQ(notes[0].payload["policy"], PolicyToJson(PolicyFixture("simple_torch_protected")));
  EXPECT_EQ(device.MarkApplied(c.id).status, ConsultationStatus::kApplied);
  EXPECT_EQ(device.GetPolicy(c.package, std::nullopt)->policy, PolicyFixture("simple_torch_protected"));

  BackupPayload b{kImei, clock_->Now(), {}, {{ParseResourceKey("LOCATION"), GeoPoint::Make(1.5, 2.5)}}};
  EXPECT_EQ(device.StoreBackup(kImei, b).version, 1u);
  EXPECT_EQ(device.FetchBackup(kImei), b);
  EXPECT_EQ(admin.PushMessage(kImei, "hi").kind, NotificationKind::kMessage);
  EXPECT_EQ(admin.FleetSummary().size(), 1u);
}

TEST_F(HttpTest, ErrorsMapBackToCodes) {
  HttpCloudClient device(url_);
  HttpCloudClient admin(url_, std::string("tok"));
  HttpCloudClient wrong(url_, std::string("nope"));
  EXPECT_CG_ERROR(device.RegisterDevice("abc", DeviceMode::kAutopilot), ErrorCode::kMalformedImei);
  EXPECT_CG_ERROR(device.ListConsultations(std::nullopt), ErrorCode::kUnauthorized);
  EXPECT_CG_ERROR(wrong.AdminDecide("c-000001", PolicyFixture("chrome")), ErrorCode::kUnauthorized);
  EXPECT_CG_ERROR(admin.AdminDecide("c-000001", PolicyFixture("chrome")), ErrorCode::kNotFound);
  EXPECT_CG_ERROR(device.FetchBackup(kImei), ErrorCode::kUnregisteredDevice);
  device.RegisterDevice(kImei, DeviceMode::kAutopilot);
  EXPECT_CG_ERROR(device.FetchBackup(kImei), ErrorCode::kNoBackup);
  Consultation c = device.SubmitConsultation(TorchRequest());
  admin.AdminDecide(c.id, PolicyFixture("simple_torch_protected"));
  EXPECT_CG_ERROR(admin.AdminDecide(c.id, PolicyFixture("simple_torch_protected")), ErrorCode::kAlreadyDecided);
}

TEST_F(HttpTest, RawStatusCodesAndApkLink) {
  httplib::Client raw(url_);
  auto r = raw.Post("/devices", R"({"imei":"x"})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(nlohmann::json::parse(r->body)["code"], "MalformedImei");
  EXPECT_EQ(raw.Get("/consultations")->status, 401);
  EXPECT_EQ(raw.Post("/devices", "{bad", "application/json")->status, 400);
  cloud_->RegisterDevice(kImei, DeviceMode::kAutopilot);
  auto c = cloud_->SubmitConsultation(TorchRequest());
  auto apk = raw.Get("/consultations/" + c.id + "/apk");
  ASSERT_TRUE(apk);
  EXPECT_EQ(apk->status, 200);
  EXPECT_NE(apk->body.find(c.apk_ref), std::string::npos);
}

TEST(HttpServerTest, PortInUse) {
  auto clock = std::make_shared<VirtualClock>(At("2014-08-01 08:00:00"));
  CloudService cloud(clock, std::nullopt);
  auto a = MakeCloudServer(cloud, std::nullopt);
  int port = a->Bind("127.0.0.1", 0);
  auto b = MakeCloudServer(cloud, std::nullopt);
  EXPECT_CG_ERROR(b->Bind("127.0.0.1", port), ErrorCode::kPortInUse);
}

TEST(HttpClientTest, UnreachableCloud) {
  HttpCloudClient client("http://127.0.0.1:1");
  EXPECT_CG_ERROR(client.RegisterDevice(kImei, DeviceMode::kAutopilot), ErrorCode::kCloudUnreachable);
}

}  // namespace
}  // namespace centerguard
