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

#ifndef CENTERGUARD_SIM_CLOCK_H_
#define CENTERGUARD_SIM_CLOCK_H_

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace centerguard {

using Instant = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

// "YYYY-MM-DD HH:MM:SS", the timestamp style used on every wire format.
std::string FormatTimestamp(Instant t);
std::optional<Instant> ParseTimestamp(std::string_view text);

// "DD / MM / YYYY", the collector table date style.
std::string FormatCollectorDate(Instant t);

// "HH:MM" time-of-day, e.g. the daily backup slot.
std::optional<Seconds> ParseTimeOfDay(std::string_view text);

// First instant >= |from| whose time of day equals |time_of_day|.
Instant NextDailySlot(Instant from, Seconds time_of_day);

// A monotone clock. Advancing never moves it backwards; AdvanceTo with an
// earlier instant is a no-op.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Instant Now() const = 0;
  virtual void Advance(Seconds d) = 0;
  virtual void AdvanceTo(Instant t) = 0;
};

class VirtualClock : public Clock {
 public:
  explicit VirtualClock(Instant start) : now_(start) {}

  Instant Now() const override;
  void Advance(Seconds d) override;
  void AdvanceTo(Instant t) override;

 private:
  mutable std::mutex mu_;
  Instant now_;
};

// Maps a simulated origin onto real elapsed time; advancing sleeps.
class WallClock : public Clock {
 public:
  explicit WallClock(Instant origin);

  Instant Now() const override;
  void Advance(Seconds d) override;
  void AdvanceTo(Instant t) override;

 private:
  Instant origin_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace centerguard

#endif  // CENTERGUARD_SIM_CLOCK_H_
