// Copyright 2026 The adserve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ISO-8601 helpers. Only the fixed forms the server emits are accepted:
//   date      YYYY-MM-DD
//   instant   YYYY-MM-DDTHH:MM:SSZ  (a bare date means its 00:00:00Z)
//   offset    Z | UTC | +HH:MM | -HH:MM

#ifndef ADSERVE_TIMEUTIL_H_
#define ADSERVE_TIMEUTIL_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "adserve/common.h"

namespace adserve {

using Date = std::chrono::year_month_day;

std::optional<Date> ParseDate(std::string_view text);
std::string FormatDate(const Date& date);

std::optional<Instant> ParseInstant(std::string_view text);
std::string FormatInstant(Instant instant);

std::optional<std::chrono::minutes> ParseUtcOffset(std::string_view text);

// Start of the hour containing `instant`.
Instant TruncateToHour(Instant instant);

// Calendar day of `instant` as seen at the given offset from UTC.
Date LocalDate(Instant instant, std::chrono::minutes offset);

Instant MakeInstant(int year, unsigned month, unsigned day, int hour = 0,
                    int minute = 0, int second = 0);

}  // namespace adserve

#endif  // ADSERVE_TIMEUTIL_H_
