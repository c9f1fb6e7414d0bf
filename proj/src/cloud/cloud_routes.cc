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

#include <cstdint>
#include <string>

#include "centerguard/cloud_service.h"
#include "centerguard/http_server.h"
#include "cloud/http_common.h"

namespace centerguard {
namespace {

using nlohmann::json;

json ArrayOf(const auto& items, auto&& to_json) {
  json out = json::array();
  for (const auto& item : items) out.push_back(to_json(item));
  return out;
}

}  // namespace

std::unique_ptr<HttpServer> MakeCloudServer(CloudService& cloud,
                                            std::optional<std::string> admin_token) {
  auto server = std::make_unique<HttpServer>();
  httplib::Server& svr = server->raw();

  auto require_admin = [admin_token](const httplib::Request& req) {
    if (admin_token && req.get_header_value(http::kAdminTokenHeader) != *admin_token) {
      throw Error(ErrorCode::kUnauthorized, "missing or wrong admin token");
    }
  };

  svr.Post("/devices", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      json body = http::BodyJson(req);
      auto mode = DeviceModeFromName(body.value("mode", "Advanced"));
      if (!mode) throw Error(ErrorCode::kValidationError, "mode must be Autopilot or Advanced");
      return RegistrationToJson(cloud.RegisterDevice(body.at("imei").get<std::string>(), *mode));
    });
  });

  svr.Get("/devices", [&cloud, require_admin](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      require_admin(req);
      return ArrayOf(cloud.FleetSummary(), DeviceSummaryToJson);
    });
  });

  svr.Get(R"(/policies/([^/]+))", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      std::optional<std::string> version;
      if (req.has_param("version")) version = req.get_param_value("version");
      auto rec = cloud.GetPolicy(req.matches[1].str(), version);
      if (!rec) throw Error(ErrorCode::kNotFound, "no policy for " + req.matches[1].str());
      return PolicyRecordToJson(*rec);
    });
  });

  svr.Post("/consultations", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      return ConsultationToJson(cloud.SubmitConsultation(ConsultationRequestFromJson(http::BodyJson(req))));
    });
  });

  svr.Get("/consultations", [&cloud, require_admin](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      require_admin(req);
      std::optional<ConsultationStatus> status;
      if (req.has_param("status") && !req.get_param_value("status").empty()) {
        status = StatusFromName(req.get_param_value("status"));
        if (!status) throw Error(ErrorCode::kValidationError, "unknown status filter");
      }
      return ArrayOf(cloud.ListConsultations(status), ConsultationToJson);
    });
  });

  svr.Get(R"(/consultations/([^/]+))", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] { return ConsultationToJson(cloud.GetConsultation(req.matches[1].str())); });
  });

  svr.Get(R"(/consultations/([^/]+)/apk)", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      Consultation c = cloud.GetConsultation(req.matches[1].str());
      if (!c.manifest) throw Error(ErrorCode::kNotFound, "no manifest stored for " + c.id);
      return json{{"apk_ref", c.apk_ref}, {"manifest", ManifestToJson(*c.manifest)}};
    });
  });

  svr.Post(R"(/consultations/([^/]+)/review)",
           [&cloud, require_admin](const httplib::Request& req, httplib::Response& res) {
             http::Guarded(res, [&] {
               require_admin(req);
               return ConsultationToJson(cloud.MarkUnderReview(req.matches[1].str()));
             });
           });

  svr.Post(R"(/consultations/([^/]+)/decision)",
           [&cloud, require_admin](const httplib::Request& req, httplib::Response& res) {
             http::Guarded(res, [&] {
               require_admin(req);
               json body = http::BodyJson(req);
               return ConsultationToJson(
                   cloud.AdminDecide(req.matches[1].str(), PolicyFromJson(body.at("policy"))));
             });
           });

  svr.Post(R"(/consultations/([^/]+)/applied)", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] { return ConsultationToJson(cloud.MarkApplied(req.matches[1].str())); });
  });

  svr.Post(R"(/consultations/([^/]+)/nack)", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      json body = http::BodyJson(req);
      return ConsultationToJson(cloud.RejectPush(req.matches[1].str(), body.value("reason", "")));
    });
  });

  svr.Get(R"(/notifications/([^/]+))", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      std::uint64_t after = 0;
      if (req.has_param("after")) after = std::stoull(req.get_param_value("after"));
      return ArrayOf(cloud.PollNotifications(req.matches[1].str(), after), NotificationToJson);
    });
  });

  svr.Post(R"(/notifications/([^/]+))",
           [&cloud, require_admin](const httplib::Request& req, httplib::Response& res) {
             http::Guarded(res, [&] {
               require_admin(req);
               json body = http::BodyJson(req);
               return NotificationToJson(cloud.PushMessage(req.matches[1].str(), body.at("text").get<std::string>()));
             });
           });

  svr.Post(R"(/backups/([^/]+))", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] {
      json body = http::BodyJson(req);
      return BackupReceiptToJson(cloud.StoreBackup(req.matches[1].str(), BackupPayloadFromJson(body.at("payload"))));
    });
  });

  svr.Get(R"(/backups/([^/]+)/latest)", [&cloud](const httplib::Request& req, httplib::Response& res) {
    http::Guarded(res, [&] { return BackupPayloadToJson(cloud.FetchBackup(req.matches[1].str())); });
  });

  return server;
}

}  // namespace centerguard
