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

#include "cloud/http_common.h"

namespace centerguard::http {

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kNoBackup:
    case ErrorCode::kUnregisteredDevice:
    case ErrorCode::kUnknownApp:
    case ErrorCode::kNotInstalled:
      return 404;
    case ErrorCode::kAlreadyDecided:
    case ErrorCode::kInvalidTransition:
    case ErrorCode::kAlreadyInstalled:
      return 409;
    case ErrorCode::kUnauthorized:
      return 401;
    case ErrorCode::kMalformedImei:
    case ErrorCode::kValidationError:
    case ErrorCode::kInvalidValue:
    case ErrorCode::kUnknownPermission:
    case ErrorCode::kNotPseudoCapable:
    case ErrorCode::kDuplicatePermission:
    case ErrorCode::kParseError:
      return 400;
    default:
      return 500;
  }
}

nlohmann::json ErrorBody(ErrorCode code, const std::string& message) {
  return {{"code", std::string(ErrorCodeName(code))}, {"message", message}};
}

void Guarded(httplib::Response& res, const std::function<nlohmann::json()>& fn, int ok_status) {
  try {
    nlohmann::json body = fn();
    res.status = ok_status;
    res.set_content(body.dump(), kJson);
  } catch (const Error& e) {
    res.status = StatusFor(e.code());
    res.set_content(ErrorBody(e.code(), e.what()).dump(), kJson);
  } catch (const nlohmann::json::exception& e) {
    res.status = 400;
    res.set_content(ErrorBody(ErrorCode::kValidationError, e.what()).dump(), kJson);
  } catch (const std::logic_error& e) {
    // std::stoull and friends on bad query parameters.
    res.status = 400;
    res.set_content(ErrorBody(ErrorCode::kValidationError, e.what()).dump(), kJson);
  }
}

nlohmann::json BodyJson(const httplib::Request& req) {
  auto j = nlohmann::json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(ErrorCode::kParseError, "request body is not JSON");
  return j;
}

nlohmann::json CheckReply(const httplib::Result& result, const std::string& what) {
  if (!result) {
    throw Error(ErrorCode::kCloudUnreachable,
                what + ": " + httplib::to_string(result.error()));
  }
  auto body = nlohmann::json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (result->status >= 200 && result->status < 300) {
    if (body.is_discarded()) throw Error(ErrorCode::kInternal, what + ": reply is not JSON");
    return body;
  }
  if (!body.is_discarded() && body.contains("code")) {
    auto code = ErrorCodeFromName(body["code"].get<std::string>()).value_or(ErrorCode::kInternal);
    throw Error(code, body.value("message", what));
  }
  throw Error(ErrorCode::kInternal, what + ": HTTP " + std::to_string(result->status));
}

}  // namespace centerguard::http
