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

#include "centerguard/errors.h"

#include <array>
#include <utility>

namespace centerguard {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 21> kNames = {{
    {ErrorCode::kDuplicatePermission, "DuplicatePermission"},
    {ErrorCode::kUnknownPermission, "UnknownPermission"},
    {ErrorCode::kNotPseudoCapable, "NotPseudoCapable"},
    {ErrorCode::kInvalidValue, "InvalidValue"},
    {ErrorCode::kUnknownApp, "UnknownApp"},
    {ErrorCode::kAlreadyInstalled, "AlreadyInstalled"},
    {ErrorCode::kNotInstalled, "NotInstalled"},
    {ErrorCode::kCloudUnreachable, "CloudUnreachable"},
    {ErrorCode::kMalformedImei, "MalformedImei"},
    {ErrorCode::kUnregisteredDevice, "UnregisteredDevice"},
    {ErrorCode::kNotFound, "NotFound"},
    {ErrorCode::kAlreadyDecided, "AlreadyDecided"},
    {ErrorCode::kInvalidTransition, "InvalidTransition"},
    {ErrorCode::kNoBackup, "NoBackup"},
    {ErrorCode::kValidationError, "ValidationError"},
    {ErrorCode::kUnauthorized, "Unauthorized"},
    {ErrorCode::kStoreCorrupt, "StoreCorrupt"},
    {ErrorCode::kParseError, "ParseError"},
    {ErrorCode::kPortInUse, "PortInUse"},
    {ErrorCode::kDegenerateTiming, "DegenerateTiming"},
    {ErrorCode::kInternal, "Internal"},
}};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Internal";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

}  // namespace centerguard
