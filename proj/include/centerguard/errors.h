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

#ifndef CENTERGUARD_ERRORS_H_
#define CENTERGUARD_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace centerguard {

// Error names are part of the wire contract: the cloud API returns them
// verbatim in {code, message} bodies and the client maps them back.
enum class ErrorCode {
  kDuplicatePermission,
  kUnknownPermission,
  kNotPseudoCapable,
  kInvalidValue,
  kUnknownApp,
  kAlreadyInstalled,
  kNotInstalled,
  kCloudUnreachable,
  kMalformedImei,
  kUnregisteredDevice,
  kNotFound,
  kAlreadyDecided,
  kInvalidTransition,
  kNoBackup,
  kValidationError,
  kUnauthorized,
  kStoreCorrupt,
  kParseError,
  kPortInUse,
  kDegenerateTiming,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_ERRORS_H_
