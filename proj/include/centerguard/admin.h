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

#ifndef CENTERGUARD_ADMIN_H_
#define CENTERGUARD_ADMIN_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "centerguard/cloud_api.h"
#include "centerguard/manifest.h"
#include "centerguard/policy.h"

namespace centerguard {

// The moderation table: App Name, Package Name, Imei, Status, Apk Link,
// Created Date (tab separated, header first). Status uses display names
// ("Not Sent").
std::string RenderConsultationTable(const std::vector<Consultation>& consultations,
                                    std::string_view cloud_url);

// Scans |dir| for a manifest JSON whose package is |package|.
std::optional<AppManifest> FindManifestForPackage(const std::filesystem::path& dir, std::string_view package);

// Checks |policy| locally (shape, pseudo capability, and exact cover of the
// manifest's permissions when a manifest is known), then submits it. Throws
// kValidationError before contacting the cloud when the check fails.
Consultation DecideChecked(CloudApi& cloud, std::string_view consultation_id, const AppPolicy& policy,
                           const std::optional<AppManifest>& manifest);

}  // namespace centerguard

#endif  // CENTERGUARD_ADMIN_H_
