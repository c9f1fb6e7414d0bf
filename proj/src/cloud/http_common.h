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

#ifndef CENTERGUARD_SRC_CLOUD_HTTP_COMMON_H_
#define CENTERGUARD_SRC_CLOUD_HTTP_COMMON_H_

#include <functional>

#include "httplib.h"
#include "json.hpp"

#include "centerguard/errors.h"

namespace centerguard::http {

inline constexpr const char* kJson = "application/json";
inline constexpr const char* kAdminTokenHeader = "X-Admin-Token";

int StatusFor(ErrorCode code);
nlohmann::json ErrorBody(ErrorCode code, const std::string& message);

// Runs |fn|, turning Error and malformed JSON into {code, message} replies.
void Guarded(httplib::Response& res, const std::function<nlohmann::json()>& fn, int ok_status = 200);
nlohmann::json BodyJson(const httplib::Request& req);

// Converts a transport failure or a {code, message} reply into Error.
nlohmann::json CheckReply(const httplib::Result& result, const std::string& what);

}  // namespace centerguard::http

#endif  // CENTERGUARD_SRC_CLOUD_HTTP_COMMON_H_
