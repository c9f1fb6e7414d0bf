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

#ifndef CENTERGUARD_TESTS_TEST_SUPPORT_H_
#define CENTERGUARD_TESTS_TEST_SUPPORT_H_

#include <gtest/gtest.h>

#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "centerguard/device.h"
#include "centerguard/errors.h"
#include "centerguard/manifest.h"
#include "centerguard/sim_clock.h"

namespace centerguard::testing {

inline std::filesystem::path FixtureDir() { return CENTERGUARD_FIXTURE_DIR; }
inline std::filesystem::path Fixture(const std::string& rel) { return FixtureDir() / rel; }

inline AppManifest Manifest(const std::string& name) { return LoadManifest(Fixture("manifests/" + name + ".json")); }
inline DeviceFixture DeviceFx(const std::string& name) { return LoadDeviceFixture(Fixture("devices/" + name + ".json")); }

inline Instant At(const std::string& ts) { return ParseTimestamp(ts).value(); }

// A fresh scratch directory under the build tree, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("centerguard-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace centerguard::testing

// Asserts that |stmt| throws centerguard::Error with code |code|.
#define EXPECT_CG_ERROR(stmt, error_code)                                               \
  do {                                                                                  \
    try {                                                                               \
      stmt;                                                                             \
      ADD_FAILURE() << "expected " << ::centerguard::ErrorCodeName(error_code);         \
    } catch (const ::centerguard::Error& e) {                                           \
      EXPECT_EQ(e.code(), error_code) << e.what();                                      \
    }                                                                                   \
  } while (0)

#endif  // CENTERGUARD_TESTS_TEST_SUPPORT_H_
