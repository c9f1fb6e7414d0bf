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

#include "centerguard/sim_clock.h"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <charconv>
#include <thread>

namespace centerguard {
namespace {

bool ParseFixed(std::string_view text, size_t pos, size_t len, int& out) {
  if (pos + len > text.size()) return false;
  for (size_t i = pos; i < pos + len; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
  return ec == std::errc();
}

}  // namespace

std::string FormatTimestamp(Instant t) {
  return fmt::format("{:%Y-%m-%d %H:%M:%S}", t);
}

std::optional<Instant> ParseTimestamp(std::string_view text) {
  // YYYY-MM-DD HH:MM:SS
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != ' ' ||
      text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  int y, mo, d, h, mi, s;
  if (!ParseFixed(text, 0, 4, y) || !ParseFixed(text, 5, 2, mo) ||
      !ParseFixed(text, 8, 2, d) || !ParseFixed(text, 11, 2, h) ||
      !ParseFixed(text, 14, 2, mi) || !ParseFixed(text, 17, 2, s)) {
    return std::nullopt;
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string FormatCollectorDate(Instant t) {
  return fmt::format("{:%d / %m / %Y}", t);
}

std::optional<Seconds> ParseTimeOfDay(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  int h, m;
  if (!ParseFixed(text, 0, 2, h) || !ParseFixed(text, 3, 2, m)) return std::nullopt;
  if (h > 23 || m > 59) return std::nullopt;
  return std::chrono::hours{h} + std::chrono::minutes{m};
}

Instant NextDailySlot(Instant from, Seconds time_of_day) {
  auto midnight = std::chrono::floor<std::chrono::days>(from);
  Instant slot = midnight + time_of_day;
  if (slot < from) slot += std::chrono::days{1};
  return slot;
}

Instant VirtualClock::Now() const {
  std::lock_guard lock(mu_);
  return now_;
}

void VirtualClock::Advance(Seconds d) {
  std::lock_guard lock(mu_);
  if (d.count() > 0) now_ += d;
}

void VirtualClock::AdvanceTo(Instant t) {
  std::lock_guard lock(mu_);
  if (t > now_) now_ = t;
}

WallClock::WallClock(Instant origin)
    : origin_(origin), started_(std::chrono::steady_clock::now()) {}

Instant WallClock::Now() const {
  auto elapsed = std::chrono::steady_clock::now() - started_;
  return origin_ + std::chrono::duration_cast<Seconds>(elapsed);
}

void WallClock::Advance(Seconds d) {
  if (d.count() > 0) std::this_thread::sleep_for(d);
}

void WallClock::AdvanceTo(Instant t) {
  auto now = Now();
  if (t > now) std::this_thread::sleep_for(t - now);
}

}  // namespace centerguard
