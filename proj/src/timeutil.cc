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

#include "adserve/timeutil.h"

#include <charconv>
#include <cstdio>

namespace adserve {

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;
using std::chrono::sys_days;

// Reads exactly `width` decimal digits.
bool ReadFixed(std::string_view text, size_t pos, size_t width, int* out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (size_t i = pos; i < pos + width; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  *out = value;
  return true;
}

}  // namespace

std::optional<Money> ParseMoney(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (frac.size() > 6) return std::nullopt;
  std::int64_t units = 0;
  if (!whole.empty()) {
    auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(),
                                   units);
    if (ec != std::errc() || p != whole.data() + whole.size()) {
      return std::nullopt;
    }
  }
  std::int64_t micros = 0;
  for (size_t i = 0; i < 6; ++i) {
    micros *= 10;
    if (i < frac.size()) {
      if (frac[i] < '0' || frac[i] > '9') return std::nullopt;
      micros += frac[i] - '0';
    }
  }
  std::int64_t total = units * 1'000'000 + micros;
  return Money(negative ? -total : total);
}

std::string FormatMoney(Money m) {
  std::int64_t v = m.micros;
  bool negative = v < 0;
  if (negative) v = -v;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%lld.%06lld", negative ? "-" : "",
                static_cast<long long>(v / 1'000'000),
                static_cast<long long>(v % 1'000'000));
  return buf;
}

std::optional<Date> ParseDate(std::string_view text) {
  int y, m, d;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return std::nullopt;
  }
  if (!ReadFixed(text, 0, 4, &y) || !ReadFixed(text, 5, 2, &m) ||
      !ReadFixed(text, 8, 2, &d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year(y), std::chrono::month(m), std::chrono::day(d)};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string FormatDate(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                unsigned(date.month()), unsigned(date.day()));
  return buf;
}

std::optional<Instant> ParseInstant(std::string_view text) {
  if (text.size() == 10) {
    auto date = ParseDate(text);
    if (!date) return std::nullopt;
    return Instant(sys_days(*date));
  }
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  auto date = ParseDate(text.substr(0, 10));
  if (!date) return std::nullopt;
  int hh, mm, ss;
  if (!ReadFixed(text, 11, 2, &hh) || !ReadFixed(text, 14, 2, &mm) ||
      !ReadFixed(text, 17, 2, &ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  return Instant(sys_days(*date)) + hours(hh) + minutes(mm) + seconds(ss);
}

std::string FormatInstant(Instant instant) {
  auto day = std::chrono::floor<days>(instant);
  Date date{day};
  std::chrono::hh_mm_ss hms{instant - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                int(date.year()), unsigned(date.month()), unsigned(date.day()),
                int(hms.hours().count()), int(hms.minutes().count()),
                int(hms.seconds().count()));
  return buf;
}

std::optional<minutes> ParseUtcOffset(std::string_view text) {
  if (text == "Z" || text == "UTC" || text == "utc") return minutes(0);
  if (text.size() != 6 || (text[0] != '+' && text[0] != '-') ||
      text[3] != ':') {
    return std::nullopt;
  }
  int hh, mm;
  if (!ReadFixed(text, 1, 2, &hh) || !ReadFixed(text, 4, 2, &mm)) {
    return std::nullopt;
  }
  if (hh > 14 || mm > 59) return std::nullopt;
  minutes offset = hours(hh) + minutes(mm);
  return text[0] == '-' ? -offset : offset;
}

Instant TruncateToHour(Instant instant) {
  return std::chrono::floor<hours>(instant);
}

Date LocalDate(Instant instant, minutes offset) {
  return Date{std::chrono::floor<days>(instant + offset)};
}

Instant MakeInstant(int year, unsigned month, unsigned day, int hour,
                    int minute, int second) {
  Date date{std::chrono::year(year), std::chrono::month(month),
            std::chrono::day(day)};
  return Instant(sys_days(date)) + hours(hour) + minutes(minute) +
         seconds(second);
}

}  // namespace adserve
