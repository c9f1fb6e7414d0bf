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

#ifndef CENTERGUARD_JSON_IO_H_
#define CENTERGUARD_JSON_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace centerguard {

// Parse errors carry "<origin>:<line>:<column>: ..." in the message.
nlohmann::json ParseJsonText(std::string_view text, std::string_view origin);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace centerguard

#endif  // CENTERGUARD_JSON_IO_H_
