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

#include "centerguard/admin.h"

#include <fmt/format.h>

#include "centerguard/errors.h"
#include "centerguard/json_io.h"

namespace centerguard {

std::string RenderConsultationTable(const std::vector<Consultation>& consultations,
                                    std::string_view cloud_url) {
  std::string out = "App Name\tPackage Name\tImei\tStatus\tApk Link\tCreated Date\n";
  for (const auto& c : consultations) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}/consultations/{}/apk\t{}\n", c.app_name, c.package, c.imei,
                       StatusDisplayName(c.status), cloud_url, c.id, FormatTimestamp(c.created_date));
  }
  return out;
}

std::optional<AppManifest> FindManifestForPackage(const std::filesystem::path& dir, std::string_view package) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return std::nullopt;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    try {
      AppManifest m = LoadManifest(path);
      if (m.package == package) return m;
    } catch (const Error&) {
      // Not a manifest; keep looking.
    }
  }
  return std::nullopt;
}

Consultation DecideChecked(CloudApi& cloud, std::string_view consultation_id, const AppPolicy& policy,
                           const std::optional<AppManifest>& manifest) {
  ValidatePolicy(policy);
  if (manifest) {
    if (manifest->package != policy.package) {
      throw Error(ErrorCode::kValidationError,
                  fmt::format("policy is for {} but the manifest is {}", policy.package, manifest->package));
    }
    ValidatePolicyCovers(policy, manifest->requested_permissions);
  }
  return cloud.AdminDecide(consultation_id, policy);
}

}  // namespace centerguard
