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

#ifndef ADSERVE_TESTS_DATE_TABLE_H_
#define ADSERVE_TESTS_DATE_TABLE_H_

#include <array>

#include "adserve/timeutil.h"

namespace adserve::testing {

// Campaign running 2013-03-01 through 2013-03-05, probed one second either
// side of four UTC midnights.
inline constexpr char kTableStart[] = "2013-03-01";
inline constexpr char kTableEnd[] = "2013-03-05";

struct DateProbe {
  const char* instant;
  bool active;
};

inline constexpr std::array<DateProbe, 12> kDateTable = {{
    {"2013-02-28T23:59:59Z", false},
    {"2013-03-01T00:00:00Z", true},
    {"2013-03-01T00:00:01Z", true},
    {"2013-03-01T23:59:59Z", true},
    {"2013-03-02T00:00:00Z", true},
    {"2013-03-02T00:00:01Z", true},
    {"2013-03-04T23:59:59Z", true},
    {"2013-03-05T00:00:00Z", true},
    {"2013-03-05T00:00:01Z", true},
    {"2013-03-05T23:59:59Z", true},
    {"2013-03-06T00:00:00Z", false},
    {"2013-03-06T00:00:01Z", false},
}};

}  // namespace adserve::testing

#endif  // ADSERVE_TESTS_DATE_TABLE_H_
