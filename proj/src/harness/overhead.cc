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

#include "centerguard/overhead.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "centerguard/digest.h"
#include "centerguard/errors.h"

namespace centerguard {
namespace {

using SteadyClock = std::chrono::steady_clock;

// Written after measuring so the app-side work cannot be optimized away.
volatile size_t g_sink = 0;

struct SideResult {
  std::chrono::nanoseconds elapsed{0};
  size_t sink = 0;  // keeps the app-side work observable
};

SideResult RunUnmediated(DeviceState device, const std::vector<ResourceRequest>& workload) {
  SideResult r;
  auto start = SteadyClock::now();
  for (const auto& req : workload) {
    ResourceValue v = ReadGroundTruth(device, ResourceKey::Normalized(req.resource.permission, req.resource.detail));
    r.sink += Sha256Hex(DisplayValue(v)).front();
  }
  r.elapsed = SteadyClock::now() - start;
  return r;
}

SideResult RunMediated(DeviceState device, const std::vector<ResourceRequest>& workload, Instant now) {
  ResourceBroker broker;
  SideResult r;
  auto start = SteadyClock::now();
  for (const auto& req : workload) {
    AppResult result = broker.Mediate(device, req, now).app_view();
    r.sink += result.denied() ? 0 : Sha256Hex(DisplayValue(*result.value)).front();
  }
  r.elapsed = SteadyClock::now() - start;
  return r;
}

std::string SequenceHash(const std::vector<ResourceRequest>& workload) {
  std::string text;
  for (const auto& req : workload) {
    text += req.app;
    text += '\t';
    text += req.resource.Name();
    text += '\n';
  }
  return Sha256Hex(text);
}

}  // namespace

nlohmann::json OverheadStatsToJson(const OverheadStats& s) {
  return {{"runs", s.runs},
          {"mean", s.mean},
          {"std_dev", s.std_dev},
          {"unit", "fraction"},
          {"calls_per_run", s.calls_per_run},
          {"mediated_sequence_hash", s.mediated_sequence_hash},
          {"unmediated_sequence_hash", s.unmediated_sequence_hash}};
}

std::vector<ResourceRequest> MakeWorkload(const DeviceState& device, size_t calls, std::uint64_t seed) {
  std::vector<ResourceRequest> choices;
  for (const auto& app : device.installed) {
    for (Permission p : app.requested_permissions) {
      if (p == Permission::kNetwork) {
        for (Detail d : {Detail::kMac, Detail::kIp, Detail::kConnection}) {
          choices.push_back({app.package, ResourceKey::Normalized(p, d)});
        }
      } else {
        choices.push_back({app.package, ResourceKey::Normalized(p)});
      }
    }
  }
  if (choices.empty()) throw Error(ErrorCode::kValidationError, "no installed app requests any permission");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, choices.size() - 1);
  std::vector<ResourceRequest> workload;
  workload.reserve(calls);
  for (size_t i = 0; i < calls; ++i) workload.push_back(choices[pick(rng)]);
  return workload;
}

OverheadStats MeasureOverhead(const DeviceState& device, const std::vector<ResourceRequest>& workload,
                              size_t runs, MediationMode mode) {
  if (runs < 2) throw Error(ErrorCode::kValidationError, "overhead measurement needs at least 2 runs");
  if (workload.empty()) throw Error(ErrorCode::kValidationError, "overhead workload is empty");

  const Instant now = *ParseTimestamp("2014-08-08 10:00:00");
  auto mediated_side = [&] {
    return mode == MediationMode::kBroker ? RunMediated(device, workload, now) : RunUnmediated(device, workload);
  };
  auto unmediated_side = [&] { return RunUnmediated(device, workload); };

  OverheadStats stats;
  stats.calls_per_run = workload.size();
  stats.mediated_sequence_hash = SequenceHash(workload);
  stats.unmediated_sequence_hash = stats.mediated_sequence_hash;

  size_t sink = 0;
  for (size_t run = 0; run <= runs; ++run) {  // run 0 is the warm-up
    SideResult med, unmed;
    if (run % 2 == 0) {
      med = mediated_side();
      unmed = unmediated_side();
    } else {
      unmed = unmediated_side();
      med = mediated_side();
    }
    sink += med.sink + unmed.sink;
    if (unmed.elapsed < std::chrono::microseconds{1}) {
      throw Error(ErrorCode::kDegenerateTiming, "unmediated run below clock resolution; enlarge the workload");
    }
    if (run == 0) continue;
    const double m = static_cast<double>(med.elapsed.count());
    const double u = static_cast<double>(unmed.elapsed.count());
    stats.fractions.push_back((m - u) / m);
  }
  g_sink = sink;

  stats.runs = stats.fractions.size();
  stats.mean = std::accumulate(stats.fractions.begin(), stats.fractions.end(), 0.0) / stats.runs;
  double ss = 0.0;
  for (double f : stats.fractions) ss += (f - stats.mean) * (f - stats.mean);
  stats.std_dev = std::sqrt(ss / (stats.runs - 1));
  return stats;
}

}  // namespace centerguard
