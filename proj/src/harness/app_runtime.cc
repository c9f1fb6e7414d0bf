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

#include "centerguard/app_runtime.h"

#include "centerguard/errors.h"

namespace centerguard {
namespace {

bool NetworkOpen(Device& device, const std::string& package) {
  AppResult link = device.Request(package, ResourceKey::Normalized(Permission::kNetwork, Detail::kConnection));
  if (link.denied()) return false;
  const auto* state = std::get_if<ConnectionState>(&*link.value);
  return state && state->allowed;
}

void AddToPost(CollectorPost& post, const ResourceKey& key, const ResourceValue& value) {
  if (const auto* imei = std::get_if<Imei>(&value); imei && key.permission == Permission::kDeviceId) {
    post.imei = imei->digits;
    return;
  }
  if (const auto* point = std::get_if<GeoPoint>(&value)) {
    post.latitude = point->latitude;
    post.longitude = point->longitude;
    return;
  }
  if (const auto* media = std::get_if<MediaToken>(&value); media && key.permission == Permission::kCamera) {
    post.photo = media->token;
    return;
  }
  std::string entry = key.Name() + "=" + DisplayValue(value);
  post.info = post.info ? *post.info + "; " + entry : entry;
}

}  // namespace

nlohmann::json AppRunReportToJson(const AppRunReport& r) {
  nlohmann::json displayed = nlohmann::json::array();
  for (const auto& [key, value] : r.displayed) {
    displayed.push_back({{"resource", key.Name()},
                         {"value", value ? nlohmann::json(DisplayValue(*value)) : nlohmann::json()}});
  }
  return {{"package", r.package},
          {"flashed", r.flashed},
          {"displayed", displayed},
          {"probe", r.probe},
          {"exfiltrated", r.exfiltrated ? CollectorPostToJson(*r.exfiltrated) : nlohmann::json()}};
}

AppRunReport RunApp(Device& device, const std::string& package, CollectorSink* sink) {
  const DeviceState snapshot = device.Snapshot();
  const AppManifest* app = snapshot.FindApp(package);
  if (!app) throw Error(ErrorCode::kUnknownApp, "app not installed: " + package);

  AppRunReport report;
  report.package = package;
  for (const Behavior& behavior : app->behaviors) {
    switch (behavior.action) {
      case BehaviorAction::kFlash:
        report.flashed = true;
        break;
      case BehaviorAction::kDisplay:
        for (const auto& key : behavior.resources) {
          report.displayed.emplace_back(key, device.Request(package, key).value);
        }
        break;
      case BehaviorAction::kProbe:
        for (const auto& key : behavior.resources) {
          AppResult result = device.Request(package, key);
          report.probe[key.Name()] =
              result.denied() ? nlohmann::json() : nlohmann::json(DisplayValue(*result.value));
        }
        break;
      case BehaviorAction::kExfiltrate: {
        if (!sink || snapshot.connection == ConnectionType::kNone || !NetworkOpen(device, package)) break;
        CollectorPost post;
        for (const auto& key : behavior.resources) {
          AppResult result = device.Request(package, key);
          if (!result.denied()) AddToPost(post, key, *result.value);
        }
        sink->Post(post);
        report.exfiltrated = std::move(post);
        break;
      }
    }
  }
  return report;
}

}  // namespace centerguard
