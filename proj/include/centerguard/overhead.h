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

#ifndef CENTERGUARD_OVERHEAD_H_
#define CENTERGUARD_OVERHEAD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "centerguard/device_state.h"
#include "centerguard/resource_broker.h"

namespace centerguard {

struct OverheadStats {
  size_t runs = 0;
  double mean = 0.0;     // fraction of measured time attributable to mediation
  double std_dev = 0.0;  // sample standard deviation across runs
  std::vector<double> fractions;
  // Identity of the work each side performed: request count and a hash of
  // the request sequence. Equal on both sides by construction; reported so
  // callers can assert it.
  size_t calls_per_run = 0;
  std::string mediated_sequence_hash;
  std::string unmediated_sequence_hash;
};

nlohmann::json OverheadStatsToJson(const OverheadStats& s);

enum class MediationMode {
  kBroker,       // the mediated side goes through the resource broker
  kPassthrough,  // both sides read ground truth directly (null experiment)
};

// A deterministic workload of |calls| requests drawn from the installed apps'
// requested permissions (NETWORK details included).
std::vector<ResourceRequest> MakeWorkload(const DeviceState& device, size_t calls, std::uint64_t seed);

// Replays |workload| |runs| times with and without mediation. Every call is
// the request plus app-side processing of the value (SHA-256 of its display
// form). Each run works on a fresh copy of |device| and a fresh broker; the
// side that runs first alternates, and one warm-up run is discarded.
// Throws kValidationError if runs < 2 or the workload is empty, and
// kDegenerateTiming if the unmediated side takes under a microsecond.
OverheadStats MeasureOverhead(const DeviceState& device, const std::vector<ResourceRequest>& workload,
                              size_t runs, MediationMode mode = MediationMode::kBroker);

}  // namespace centerguard

#endif  // CENTERGUARD_OVERHEAD_H_
