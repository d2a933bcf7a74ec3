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

#ifndef ADSERVE_COMMON_H_
#define ADSERVE_COMMON_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace adserve {

// Entity ids come from one counter shared by every entity kind, so an id
// never refers to two different entities.
using Id = std::int64_t;

// Instants are whole seconds since the Unix epoch, UTC.
using Instant = std::chrono::sys_seconds;

// Money in integer micro-units (1.0 currency unit == 1'000'000 micros).
struct Money {
  std::int64_t micros = 0;

  constexpr Money() = default;
  constexpr explicit Money(std::int64_t m) : micros(m) {}

  static constexpr Money FromUnits(std::int64_t units) {
    return Money(units * 1'000'000);
  }

  constexpr auto operator<=>(const Money&) const = default;
  constexpr Money operator+(Money o) const { return Money(micros + o.micros); }
  constexpr Money& operator+=(Money o) {
    micros += o.micros;
    return *this;
  }
};

// Parses a decimal amount such as "2.5" or "0.000001" into micros.
// Rejects more than six fractional digits and anything non-numeric.
std::optional<Money> ParseMoney(std::string_view text);

// "2.500000"-style rendering with all six fractional digits.
std::string FormatMoney(Money m);

}  // namespace adserve

#endif  // ADSERVE_COMMON_H_
