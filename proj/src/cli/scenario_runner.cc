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

#include "centerguard/scenario_runner.h"

#include <fmt/format.h>

#include <charconv>

#include "centerguard/app_runtime.h"
#include "centerguard/errors.h"
#include "centerguard/manifest.h"

namespace centerguard {
namespace {

using nlohmann::json;

double ParseDouble(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidValue, "not a number: '" + s + "'");
  }
  return v;
}

std::string Join(std::span<const std::string> args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

std::filesystem::path Resolve(const RunnerOptions& options, const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  if (std::filesystem::exists(options.base_dir / p)) return options.base_dir / p;
  if (!options.fixture_dir.empty() && std::filesystem::exists(options.fixture_dir / p)) {
    return options.fixture_dir / p;
  }
  throw Error(ErrorCode::kNotFound, "fixture not found: " + name);
}

json CollectorRowsJson(const std::vector<CollectorRow>& newest_first) {
  json rows = json::array();
  for (const auto& r : newest_first) rows.push_back(CollectorRowToJson(r));
  return rows;
}

// Lazily registers the device the first time the cloud is used.
class CloudSession {
 public:
  CloudSession(CloudApi* cloud, Device& device) : cloud_(cloud), device_(device) {}

  CloudApi& Get() {
    if (!cloud_) throw Error(ErrorCode::kCloudUnreachable, "no cloud configured (set --cloud-url)");
    if (!registered_) {
      device_.RegisterWith(*cloud_);
      registered_ = true;
    }
    return *cloud_;
  }

 private:
  CloudApi* cloud_;
  Device& device_;
  bool registered_ = false;
};

}  // namespace

std::optional<ClockKind> ClockKindFromName(std::string_view name) {
  if (name == "virtual") return ClockKind::kVirtual;
  if (name == "wall") return ClockKind::kWall;
  return std::nullopt;
}

ResourceValue ParseValueArgs(const ResourceKey& key, std::span<const std::string> args) {
  const ValueKind kind = KindForResource(key);
  auto single = [&]() -> const std::string& {
    if (args.size() != 1) {
      throw Error(ErrorCode::kInvalidValue,
                  fmt::format("{} takes one value, got {}", key.Name(), args.size()));
    }
    return args[0];
  };
  switch (kind) {
    case ValueKind::kImei: return Imei::Parse(single());
    case ValueKind::kLocation: {
      std::vector<std::string> parts(args.begin(), args.end());
      if (parts.size() == 1) {
        auto comma = parts[0].find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::kInvalidValue, "location needs '<lat> <lon>'");
        parts = {parts[0].substr(0, comma), parts[0].substr(comma + 1)};
      }
      if (parts.size() != 2) throw Error(ErrorCode::kInvalidValue, "location needs '<lat> <lon>'");
      if (!parts[0].empty() && parts[0].back() == ',') parts[0].pop_back();
      return GeoPoint::Make(ParseDouble(parts[0]), ParseDouble(parts[1]));
    }
    case ValueKind::kMac: return MacAddress::Parse(single());
    case ValueKind::kIp: return IpAddress::Parse(single());
    case ValueKind::kAddress: return StreetAddress{Join(args)};
    case ValueKind::kConnection: {
      const std::string& v = single();
      if (v == "allowed") return ConnectionState{true};
      if (v == "blocked") return ConnectionState{false};
      throw Error(ErrorCode::kInvalidValue, "connection is allowed|blocked, got '" + v + "'");
    }
    case ValueKind::kToken: return MediaToken{single()};
  }
  throw Error(ErrorCode::kInvalidValue, "unsupported value for " + key.Name());
}

json RunScenario(const ScenarioScript& script, const RunnerOptions& options, CloudApi* cloud,
                 CollectorSink* collector) {
  const auto& events = script.events;
  const Instant origin = events.empty() ? *ParseTimestamp("2014-08-08 00:00:00") : events.front().at;
  std::shared_ptr<Clock> clock;
  if (options.clock == ClockKind::kWall) {
    clock = std::make_shared<WallClock>(origin);
  } else {
    clock = std::make_shared<VirtualClock>(origin);
  }

  size_t first = 0;
  DeviceFixture fixture;
  if (!events.empty() && events.front().action == ScenarioAction::kDevice) {
    fixture = LoadDeviceFixture(Resolve(options, events.front().args[0]));
    first = 1;
  } else {
    fixture = LoadDeviceFixture(options.default_device);
  }
  for (const auto& [key, value] : options.pseudo_defaults) fixture.state.pseudo_config.try_emplace(key, value);
  std::vector<GeoPoint> track = std::move(fixture.gps_track);
  size_t track_index = 0;
  Device device(std::move(fixture.state), clock, options.device);
  Collector local_collector(clock);
  CollectorSink* sink = collector ? collector : &local_collector;
  CloudSession session(cloud, device);

  json event_reports = json::array();
  json sync_reports = json::array();
  if (first == 1) {
    event_reports.push_back({{"at", FormatTimestamp(events[0].at)},
                             {"line", events[0].line},
                             {"action", "device"},
                             {"result", {{"imei", device.imei()}}}});
  }

  for (size_t i = first; i < events.size(); ++i) {
    const ScenarioEvent& e = events[i];
    const auto& args = e.args;
    if (e.action != ScenarioAction::kTick) clock->AdvanceTo(e.at);
    json result = json::object();
    try {
      switch (e.action) {
        case ScenarioAction::kDevice:
          throw Error(ErrorCode::kParseError, "'device' must be the first event");
        case ScenarioAction::kInstall: {
          InstallReport r = device.InstallApp(LoadManifest(Resolve(options, args[0])));
          json unused = json::array();
          for (Permission p : r.unused_permissions) unused.push_back(std::string(PermissionName(p)));
          result = {{"package", r.package},
                    {"over_privileged", r.over_privileged()},
                    {"unused_permissions", unused},
                    {"queued_for_sync", r.queued_for_sync}};
          break;
        }
        case ScenarioAction::kSetMode: {
          DeviceMode mode = *DeviceModeFromName(args[0]);
          device.SetMode(mode);
          result = {{"mode", std::string(DeviceModeName(mode))}};
          break;
        }
        case ScenarioAction::kSetPermission: {
          ResourceKey key = ParseResourceKey(args[1]);
          ModeTag tag = *ModeTagFromName(args[2]);
          PermissionMode mode = PermissionMode::Real();
          if (tag == ModeTag::kBlock) mode = PermissionMode::Block();
          if (tag == ModeTag::kPseudo) {
            std::span<const std::string> values(args.begin() + 3, args.end());
            mode = values.empty() ? PermissionMode::Pseudo()
                                  : PermissionMode::Pseudo(ParseValueArgs(key, values));
          }
          device.SetPermissionManual(args[0], key.permission, mode);
          result = {{"package", args[0]}, {"permission", key.Name()}, {"mode", ModeToJson(mode)}};
          break;
        }
        case ScenarioAction::kSetPseudo: {
          ResourceKey key = ParseResourceKey(args[0]);
          ResourceValue value = ParseValueArgs(key, std::span<const std::string>(args.begin() + 1, args.end()));
          device.SetPseudoValue(key, value);
          result = {{"resource", key.Name()}, {"value", ValueToJson(value)}};
          break;
        }
        case ScenarioAction::kNetworkChange: {
          ConnectionType c = *ConnectionTypeFromName(args[0]);
          device.SetConnection(c);
          result = {{"connection", std::string(ConnectionTypeName(c))}};
          break;
        }
        case ScenarioAction::kWifiOnly:
          device.SetWifiOnlyBackup(args[0] == "on");
          result = {{"wifi_only", args[0] == "on"}};
          break;
        case ScenarioAction::kMove: {
          GeoPoint p = GeoPoint::Make(ParseDouble(args[0]), ParseDouble(args[1]));
          device.MoveTo(p);
          result = {{"location", DisplayValue(p)}};
          break;
        }
        case ScenarioAction::kTick: {
          try {
            BackupOutcome outcome = device.BackupTick(session.Get(), e.at);
            result = {{"outcome", std::string(BackupOutcomeName(outcome))}};
          } catch (const Error& err) {
            if (err.code() != ErrorCode::kCloudUnreachable) throw;
            result = {{"outcome", "Deferred"}, {"error", std::string(ErrorCodeName(err.code()))}};
          }
          result["next_backup_at"] = FormatTimestamp(device.next_backup_at());
          break;
        }
        case ScenarioAction::kSync: {
          SyncReport r = device.AutopilotSync(session.Get());
          result = SyncReportToJson(r);
          sync_reports.push_back(result);
          break;
        }
        case ScenarioAction::kRunApp: {
          int count = args.size() > 1 ? std::stoi(args[1]) : 1;
          json runs = json::array();
          for (int n = 0; n < count; ++n) {
            if (!track.empty()) device.MoveTo(track[track_index++ % track.size()]);
            runs.push_back(AppRunReportToJson(RunApp(device, args[0], sink)));
          }
          result = {{"runs", runs}};
          break;
        }
        case ScenarioAction::kPoll: {
          PollReport r = device.PollAndApply(session.Get());
          json received = json::array();
          for (const auto& n : r.received) received.push_back(NotificationToJson(n));
          result = {{"received", received},
                    {"applied", r.applied_packages},
                    {"rejected", r.rejected_packages}};
          break;
        }
      }
    } catch (const Error& err) {
      throw Error(err.code(), fmt::format("line {} ({}): {}", e.line, ScenarioActionName(e.action), err.what()));
    }
    event_reports.push_back({{"at", FormatTimestamp(e.at)},
                             {"line", e.line},
                             {"action", std::string(ScenarioActionName(e.action))},
                             {"result", result}});
  }

  json audit = json::array();
  for (const auto& r : device.AuditLog()) audit.push_back(AuditRecordToJson(r));
  json report = {{"imei", device.imei()},
                 {"events", event_reports},
                 {"sync_reports", sync_reports},
                 {"collector_rows", collector ? json::array() : CollectorRowsJson(local_collector.NewestFirst())},
                 {"notifications", device.SurfacedNotifications()},
                 {"audit", audit},
                 {"final_time", FormatTimestamp(device.Now())},
                 {"final_score", ScoreToJson(device.Score(options.weights))}};
  return report;
}

}  // namespace centerguard
