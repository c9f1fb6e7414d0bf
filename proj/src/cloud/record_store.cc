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

#include "centerguard/record_store.h"

#include <fmt/format.h>

#include <fstream>

#include "centerguard/errors.h"

namespace centerguard {

RecordStore::RecordStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kInternal, "cannot create store dir " + dir_.string() + ": " + ec.message());
}

RecordStore::~RecordStore() = default;

std::filesystem::path RecordStore::PathFor(std::string_view table) const {
  return dir_ / (std::string(table) + ".jsonl");
}

std::vector<nlohmann::json> RecordStore::Load(std::string_view table) const {
  std::vector<nlohmann::json> records;
  auto path = PathFor(table);
  std::ifstream in(path, std::ios::binary);
  if (!in) return records;

  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < contents.size()) {
    ++line_no;
    size_t end = contents.find('\n', pos);
    bool terminated = end != std::string::npos;
    std::string_view line(contents.data() + pos, (terminated ? end : contents.size()) - pos);
    pos = terminated ? end + 1 : contents.size();
    if (!terminated) {
      // Torn write from a crash mid-append; cut it so later appends start clean.
      std::filesystem::resize_file(path, pos - line.size());
      break;
    }
    if (line.empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorCode::kStoreCorrupt,
                  fmt::format("{}:{}: corrupt record: {}", path.string(), line_no,
                              line.substr(0, 120)));
    }
    records.push_back(std::move(record));
  }
  return records;
}

void RecordStore::Append(std::string_view table, const nlohmann::json& record) {
  std::string line = record.dump();
  line += '\n';
  std::lock_guard lock(mu_);
  auto it = files_.find(table);
  if (it == files_.end()) {
    std::FILE* f = std::fopen(PathFor(table).c_str(), "ab");
    if (!f) throw Error(ErrorCode::kInternal, "cannot open " + PathFor(table).string());
    it = files_.emplace(std::string(table), std::unique_ptr<std::FILE, FileCloser>(f)).first;
  }
  std::FILE* f = it->second.get();
  if (std::fwrite(line.data(), 1, line.size(), f) != line.size() || std::fflush(f) != 0) {
    throw Error(ErrorCode::kInternal, "write failed on " + PathFor(table).string());
  }
}

void RecordStore::Flush() {
  std::lock_guard lock(mu_);
  for (auto& [name, f] : files_) std::fflush(f.get());
}

}  // namespace centerguard
