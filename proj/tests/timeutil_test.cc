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

#include <gtest/gtest.h>

#include "adserve/common.h"

namespace adserve {
namespace {

using std::chrono::minutes;

TEST(DateTest, ParsesAndFormats) {
  auto d = ParseDate("2013-03-01");
  ASSERT_TRUE(d);
  EXPECT_EQ(FormatDate(*d), "2013-03-01");
  EXPECT_FALSE(ParseDate("2013-02-30"));
  EXPECT_FALSE(ParseDate("2013-3-1"));
  EXPECT_FALSE(ParseDate("2013-03-01x"));
  EXPECT_FALSE(ParseDate(""));
  EXPECT_TRUE(ParseDate("2012-02-29"));
  EXPECT_FALSE(ParseDate("2013-02-29"));
}

TEST(InstantTest, RoundTrips) {
  Instant t = MakeInstant(2013, 3, 5, 23, 59, 59);
  EXPECT_EQ(FormatInstant(t), "2013-03-05T23:59:59Z");
  EXPECT_EQ(ParseInstant("2013-03-05T23:59:59Z"), t);
  EXPECT_EQ(ParseInstant("2013-03-05"), MakeInstant(2013, 3, 5));
  EXPECT_EQ(FormatInstant(MakeInstant(1970, 1, 1)), "1970-01-01T00:00:00Z");
}

TEST(InstantTest, RejectsMalformed) {
  EXPECT_FALSE(ParseInstant("2013-03-05T24:00:00Z"));
  EXPECT_FALSE(ParseInstant("2013-03-05T23:60:00Z"));
  EXPECT_FALSE(ParseInstant("2013-03-05T23:59:59"));
  EXPECT_FALSE(ParseInstant("yesterday"));
  EXPECT_FALSE(ParseInstant(""));
}

TEST(UtcOffsetTest, Forms) {
  EXPECT_EQ(ParseUtcOffset("UTC"), minutes(0));
  EXPECT_EQ(ParseUtcOffset("Z"), minutes(0));
  EXPECT_EQ(ParseUtcOffset("+07:00"), minutes(420));
  EXPECT_EQ(ParseUtcOffset("-03:30"), minutes(-210));
  EXPECT_FALSE(ParseUtcOffset("+25:00"));
  EXPECT_FALSE(ParseUtcOffset("Asia/Kuala_Lumpur"));
}

TEST(TruncateToHourTest, DropsMinutesAndSeconds) {
  EXPECT_EQ(TruncateToHour(MakeInstant(2013, 3, 5, 10, 59, 59)),
            MakeInstant(2013, 3, 5, 10));
  EXPECT_EQ(TruncateToHour(MakeInstant(2013, 3, 5, 10)),
            MakeInstant(2013, 3, 5, 10));
}

TEST(LocalDateTest, AppliesOffset) {
  Instant t = MakeInstant(2013, 2, 28, 17);
  EXPECT_EQ(FormatDate(LocalDate(t, minutes(0))), "2013-02-28");
  EXPECT_EQ(FormatDate(LocalDate(t, minutes(420))), "2013-03-01");
  EXPECT_EQ(FormatDate(LocalDate(t - std::chrono::seconds(1), minutes(420))),
            "2013-02-28");
  EXPECT_EQ(FormatDate(LocalDate(MakeInstant(2013, 3, 1, 2), minutes(-180))),
            "2013-02-28");
}

TEST(MoneyTest, ParsesDecimalAmounts) {
  EXPECT_EQ(ParseMoney("2.5"), Money(2'500'000));
  EXPECT_EQ(ParseMoney("0.000001"), Money(1));
  EXPECT_EQ(ParseMoney("3"), Money::FromUnits(3));
  EXPECT_FALSE(ParseMoney("0.0000001"));
  EXPECT_FALSE(ParseMoney("abc"));
  EXPECT_FALSE(ParseMoney(""));
  EXPECT_EQ(FormatMoney(Money(2'500'000)), "2.500000");
  EXPECT_EQ(FormatMoney(Money()), "0.000000");
}

}  // namespace
}  // namespace adserve
