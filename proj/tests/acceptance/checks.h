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

#ifndef CENTERGUARD_TESTS_ACCEPTANCE_CHECKS_H_
#define CENTERGUARD_TESTS_ACCEPTANCE_CHECKS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace centerguard::acceptance {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

std::filesystem::path FixtureDir();

// Collector-table reproductions (exact match against fixtures/repro).
CheckResult CheckTorchFigure(const std::string& figure);
// Leakage probe against the five configured values.
CheckResult CheckLeakageProbe();
// Autopilot with one unknown app through NotSent -> ... -> Applied under
// |interleavings| randomized admin/device schedules (half threaded), plus one
// run over HTTP.
CheckResult CheckConsultationLifecycle(int interleavings, std::uint64_t seed);
// 3 known apps -> exactly 12 s; 09:00 backup uploads under WIFI and skips
// under wifi_only + GPRS; two runs give identical reports.
CheckResult CheckTimingSemantics();
// Table 3 protocol: |runs| x |calls| with the pinned bound, plus the
// passthrough null experiment.
CheckResult CheckOverheadProtocol(size_t runs, size_t calls);

// Property suites.
CheckResult CheckScoreMonotonicity(int perturbations, std::uint64_t seed);
CheckResult CheckBackupRoundTrip(int trials, std::uint64_t seed);
CheckResult CheckExactlyOneAudit(int sequences, std::uint64_t seed);
CheckResult CheckPseudoOpacity(int trials, std::uint64_t seed);
// Kills a child process writing to the store (SIGKILL) |cycles| times and
// verifies every acknowledged write survives each restart.
CheckResult CheckStoreDurability(int cycles, std::uint64_t seed, const std::filesystem::path& scratch);

}  // namespace centerguard::acceptance

#endif  // CENTERGUARD_TESTS_ACCEPTANCE_CHECKS_H_
