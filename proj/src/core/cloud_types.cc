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

#include "centerguard/cloud_types.h"

#include "centerguard/errors.h"

namespace centerguard {
namespace {

using nlohmann::json;

Instant TimeFromJson(const json& j) {
  auto t = ParseTimestamp(j.get<std::string>());
  if (!t) throw Error(ErrorCode::kValidationError, "bad timestamp '" + j.get<std::string>() + "'");
  return *t;
}

template <class F>
auto Decode(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidationError, std::string("bad ") + std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string_view StatusName(ConsultationStatus s) {
  switch (s) {
    case ConsultationStatus::kNotSent: return "NotSent";
    case ConsultationStatus::kUnderReview: return "UnderReview";
    case ConsultationStatus::kDecided: return "Decided";
    case ConsultationStatus::kPushed: return "Pushed";
    case ConsultationStatus::kApplied: return "Applied";
  }
  return "";
}

std::string_view StatusDisplayName(ConsultationStatus s) {
  switch (s) {
    case ConsultationStatus::kNotSent: return "Not Sent";
    case ConsultationStatus::kUnderReview: return "Under Review";
    default: return StatusName(s);
  }
}

std::optional<ConsultationStatus> StatusFromName(std::string_view name) {
  for (auto s : {ConsultationStatus::kNotSent, ConsultationStatus::kUnderReview,
                 ConsultationStatus::kDecided, ConsultationStatus::kPushed,
                 ConsultationStatus::kApplied}) {
    if (name == StatusName(s) || name == StatusDisplayName(s)) return s;
  }
  return std::nullopt;
}

bool IsValidTransition(ConsultationStatus from, ConsultationStatus to) {
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

json ConsultationToJson(const Consultation& c) {
  json history = json::array();
  for (const auto& h : c.history) {
    history.push_back({{"status", std::string(StatusName(h.status))}, {"at", FormatTimestamp(h.at)}});
  }
  json j = {{"id", c.id},
            {"app_name", c.app_name},
            {"package", c.package},
            {"version", c.version},
            {"imei", c.imei},
            {"status", std::string(StatusName(c.status))},
            {"apk_ref", c.apk_ref},
            {"created_date", FormatTimestamp(c.created_date)},
            {"decision", c.decision ? PolicyToJson(*c.decision) : json(nullptr)},
            {"history", history}};
  if (c.manifest) j["manifest"] = ManifestToJson(*c.manifest);
  if (c.nack_reason) j["nack_reason"] = *c.nack_reason;
  return j;
}

Consultation ConsultationFromJson(const json& j) {
  return Decode("consultation", [&] {
    Consultation c;
    c.id = j.at("id").get<std::string>();
    c.app_name = j.at("app_name").get<std::string>();
    c.package = j.at("package").get<std::string>();
    c.version = j.value("version", "");
    c.imei = j.at("imei").get<std::string>();
    auto status = StatusFromName(j.at("status").get<std::string>());
    if (!status) throw Error(ErrorCode::kValidationError, "bad consultation status");
    c.status = *status;
    c.apk_ref = j.value("apk_ref", "");
    c.created_date = TimeFromJson(j.at("created_date"));
    if (j.contains("decision") && !j["decision"].is_null()) c.decision = PolicyFromJson(j["decision"]);
    if (j.contains("manifest") && !j["manifest"].is_null()) c.manifest = ManifestFromJson(j["manifest"]);
    if (j.contains("nack_reason")) c.nack_reason = j["nack_reason"].get<std::string>();
    for (const auto& h : j.value("history", json::array())) {
      auto s = StatusFromName(h.at("status").get<std::string>());
      if (!s) throw Error(ErrorCode::kValidationError, "bad history status");
      c.history.push_back({*s, TimeFromJson(h.at("at"))});
    }
    return c;
  });
}

json ConsultationRequestToJson(const ConsultationRequest& r) {
  json j = {{"imei", r.imei},       {"app_name", r.app_name}, {"package", r.package},
            {"version", r.version}, {"apk_ref", r.apk_ref}};
  if (r.manifest) j["manifest"] = ManifestToJson(*r.manifest);
  return j;
}

ConsultationRequest ConsultationRequestFromJson(const json& j) {
  return Decode("consultation request", [&] {
    ConsultationRequest r;
    r.imei = j.at("imei").get<std::string>();
    r.app_name = j.at("app_name").get<std::string>();
    r.package = j.at("package").get<std::string>();
    r.version = j.value("version", "");
    r.apk_ref = j.value("apk_ref", "");
    if (j.contains("manifest") && !j["manifest"].is_null()) r.manifest = ManifestFromJson(j["manifest"]);
    return r;
  });
}

std::string_view NotificationKindName(NotificationKind k) {
  return k == NotificationKind::kSettingsPush ? "SettingsPush" : "Message";
}

json NotificationToJson(const Notification& n) {
  return {{"target_imei", n.target_imei},
          {"kind", std::string(NotificationKindName(n.kind))},
          {"payload", n.payload},
          {"delivered", n.delivered},
          {"sequence", n.sequence}};
}

Notification NotificationFromJson(const json& j) {
  return Decode("notification", [&] {
    Notification n;
    n.target_imei = j.at("target_imei").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "SettingsPush") {
      n.kind = NotificationKind::kSettingsPush;
    } else if (kind == "Message") {
      n.kind = NotificationKind::kMessage;
    } else {
      throw Error(ErrorCode::kValidationError, "bad notification kind " + kind);
    }
    n.payload = j.at("payload");
    n.delivered = j.value("delivered", false);
    n.sequence = j.at("sequence").get<std::uint64_t>();
    return n;
  });
}

json PolicyRecordToJson(const PolicyRecord& r) {
  return {{"package", r.package},
          {"version", r.version},
          {"policy", PolicyToJson(r.policy)},
          {"moderated_at", FormatTimestamp(r.moderated_at)},
          {"revision", r.revision}};
}

PolicyRecord PolicyRecordFromJson(const json& j) {
  return Decode("policy record", [&] {
    PolicyRecord r;
    r.package = j.at("package").get<std::string>();
    r.version = j.value("version", "");
    r.policy = PolicyFromJson(j.at("policy"));
    r.moderated_at = TimeFromJson(j.at("moderated_at"));
    r.revision = j.value("revision", std::uint64_t{0});
    return r;
  });
}

json RegistrationToJson(const DeviceRegistration& r) {
  return {{"imei", r.imei},
          {"mode", std::string(DeviceModeName(r.mode))},
          {"registered_at", FormatTimestamp(r.registered_at)},
          {"last_backup_at", r.last_backup_at ? json(FormatTimestamp(*r.last_backup_at)) : json(nullptr)}};
}

DeviceRegistration RegistrationFromJson(const json& j) {
  return Decode("registration", [&] {
    DeviceRegistration r;
    r.imei = j.at("imei").get<std::string>();
    auto mode = DeviceModeFromName(j.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorCode::kValidationError, "bad device mode");
    r.mode = *mode;
    r.registered_at = TimeFromJson(j.at("registered_at"));
    if (j.contains("last_backup_at") && !j["last_backup_at"].is_null()) {
      r.last_backup_at = TimeFromJson(j["last_backup_at"]);
    }
    return r;
  });
}

json BackupPayloadToJson(const BackupPayload& b) {
  json policies = json::object();
  for (const auto& [pkg, policy] : b.policies) policies[pkg] = PolicyToJson(policy);
  return {{"imei", b.imei},
          {"created_at", FormatTimestamp(b.created_at)},
          {"policies", policies},
          {"pseudo_config", PseudoConfigToJson(b.pseudo_config)}};
}

BackupPayload BackupPayloadFromJson(const json& j) {
  return Decode("backup payload", [&] {
    BackupPayload b;
    b.imei = j.at("imei").get<std::string>();
    b.created_at = TimeFromJson(j.at("created_at"));
    for (const auto& [pkg, policy] : j.at("policies").items()) b.policies[pkg] = PolicyFromJson(policy);
    b.pseudo_config = PseudoConfigFromJson(j.value("pseudo_config", json::object()));
    return b;
  });
}

json BackupReceiptToJson(const BackupReceipt& r) {
  return {{"imei", r.imei}, {"version", r.version}, {"stored_at", FormatTimestamp(r.stored_at)}};
}

BackupReceipt BackupReceiptFromJson(const json& j) {
  return Decode("backup receipt", [&] {
    return BackupReceipt{j.at("imei").get<std::string>(), j.at("version").get<std::uint64_t>(),
                         TimeFromJson(j.at("stored_at"))};
  });
}

json DeviceSummaryToJson(const DeviceSummary& s) {
  json j = RegistrationToJson(s.registration);
  j["privacy_score"] = ScoreToJson(s.score);
  return j;
}

DeviceSummary DeviceSummaryFromJson(const json& j) {
  return Decode("device summary", [&] {
    DeviceSummary s{RegistrationFromJson(j), {}};
    s.score.value = j.at("privacy_score").at("value").get<int>();
    s.score.band = BandFor(s.score.value);
    return s;
  });
}

}  // namespace centerguard
