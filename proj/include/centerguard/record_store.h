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

#ifndef CENTERGUARD_RECORD_STORE_H_
#define CENTERGUARD_RECORD_STORE_H_

#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace centerguard {

// Append-only, line-delimited JSON log per table ("<dir>/<table>.jsonl").
// Each Append writes one complete line and flushes it before returning, so
// a process crash loses at most the record being written. That record was
// never acknowledged: Load drops an unterminated trailing line and truncates
// the file back to the last complete line. Any other line that does not parse
// makes Load throw Error(kStoreCorrupt) naming the file and line.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path dir);
  ~RecordStore();

  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  std::vector<nlohmann::json> Load(std::string_view table) const;
  void Append(std::string_view table, const nlohmann::json& record);
  void Flush();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct FileCloser {
    void operator()(std::FILE* f) const {
      if (f) std::fclose(f);
    }
  };

  std::filesystem::path PathFor(std::string_view table) const;

  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<std::FILE, FileCloser>, std::less<>> files_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_RECORD_STORE_H_
