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

#include "adserve/opctl.h"

#include <gtest/gtest.h>

#include <sstream>

#include "gateway_harness.h"
#include "json.hpp"

namespace adserve::opctl {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class OpctlTest : public ::testing::Test {
 protected:
  Result Call(std::vector<std::string> args) {
    std::ostringstream out, err;
    std::map<std::string, std::string> env = {
        {"ADSERVE_URL", server_.base()}, {"ADSERVE_TOKEN", testing::kToken}};
    int code = opctl::Run(args, out, err, env);
    return {code, out.str(), err.str()};
  }

  json Api(const std::string& path) {
    auto r = server_.Client().Get(path);
    EXPECT_TRUE(r);
    return json::parse(r->body);
  }

  Id AddSiteAndZone() {
    Result site = Call({"website", "add", "--name", "Blog"});
    EXPECT_EQ(site.code, kExitOk) << site.err;
    Result zone = Call({"zone", "add", "--website", Trim(site.out), "--name",
                        "Top", "--width", "728", "--height", "90"});
    EXPECT_EQ(zone.code, kExitOk) << zone.err;
    return std::stoll(zone.out);
  }

  static std::string Trim(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  }

  testing::RunningGateway server_;
};

TEST_F(OpctlTest, AddPrintsIdAndIsVisible) {
  Id zone = AddSiteAndZone();
  EXPECT_GT(zone, 0);
  json got = Api("/api/zones/" + std::to_string(zone));
  EXPECT_EQ(got["name"], "Top");
  EXPECT_EQ(got["width"], 728);

  Result list = Call({"zone", "list"});
  ASSERT_EQ(list.code, kExitOk);
  EXPECT_NE(list.out.find("Top"), std::string::npos);
}

TEST_F(OpctlTest, JsonFormatPrintsRawBody) {
  AddSiteAndZone();
  Result r = Call({"--format", "json", "zone", "list"});
  ASSERT_EQ(r.code, kExitOk);
  auto raw = server_.Client().Get("/api/zones");
  EXPECT_EQ(r.out, raw->body + "\n");
}

TEST_F(OpctlTest, AdBidIsParsedAsMoney) {
  Result adv = Call({"advertiser", "add", "--name", "Acme"});
  Result camp = Call({"campaign", "add", "--advertiser", Trim(adv.out), "--name", "C"});
  ASSERT_EQ(camp.code, kExitOk) << camp.err;
  Result ad = Call({"ad", "add", "--campaign", Trim(camp.out), "--title", "Lens",
                    "--landing-url", "https://acme.example/", "--width", "728",
                    "--height", "90", "--keyword", "lens", "--keyword", "zoom",
                    "--bid", "1.25"});
  ASSERT_EQ(ad.code, kExitOk) << ad.err;
  json got = Api("/api/ads/" + Trim(ad.out));
  EXPECT_EQ(got["bid"], 1250000);
  EXPECT_EQ(got["keywords"], json::array({"lens", "zoom"}));
}

TEST_F(OpctlTest, TagPrintsSnippet) {
  Id zone = AddSiteAndZone();
  Result r = Call({"tag", "--zone", std::to_string(zone)});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "<iframe src=\"" + server_.base() + "/ad?zoneid=" +
                       std::to_string(zone) +
                       "\" width=\"728\" height=\"90\" frameborder=\"0\" "
                       "scrolling=\"no\"></iframe>\n");
}

TEST_F(OpctlTest, LinkAndDisable) {
  Id zone = AddSiteAndZone();
  Result adv = Call({"advertiser", "add", "--name", "Acme"});
  Result camp = Call({"campaign", "add", "--advertiser", Trim(adv.out), "--name", "C"});
  Result r = Call({"link", "--zone", std::to_string(zone), "--campaign", Trim(camp.out)});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("campaign"), std::string::npos);
  EXPECT_NE(r.out.find("no"), std::string::npos);
  r = Call({"link", "--zone", std::to_string(zone), "--campaign", Trim(camp.out),
            "--disable"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json links = Api("/api/links");
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0]["disabled"], true);
  EXPECT_EQ(Call({"link", "--zone", "1"}).code, kExitUsage);
}

TEST_F(OpctlTest, TargetSet) {
  Result adv = Call({"advertiser", "add", "--name", "Acme"});
  Result camp = Call({"campaign", "add", "--advertiser", Trim(adv.out), "--name", "C"});
  Result r = Call({"target", "set", "--campaign", Trim(camp.out), "--dimension",
                   "country", "--value", "MY", "--value", "SG"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json rule = Api("/api/targeting/" + Trim(r.out));
  EXPECT_EQ(rule["dimension"], "country");
  EXPECT_EQ(rule["values"].size(), 2u);
  r = Call({"target", "set", "--campaign", Trim(camp.out), "--dimension",
            "weather", "--value", "rain"});
  EXPECT_EQ(r.code, kExitApiError);
  EXPECT_NE(r.err.find("HTTP 422"), std::string::npos) << r.err;
}

TEST_F(OpctlTest, InvariantErrorExitsOne) {
  Result site = Call({"website", "add", "--name", "Blog"});
  Result r = Call({"zone", "add", "--website", Trim(site.out), "--name", "Z",
                   "--width", "0", "--height", "90"});
  EXPECT_EQ(r.code, kExitApiError);
  EXPECT_NE(r.err.find("422"), std::string::npos);
  EXPECT_NE(r.err.find("width"), std::string::npos) << r.err;
}

TEST_F(OpctlTest, BadFlagsExitTwo) {
  EXPECT_EQ(Call({"zone", "add", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"--format", "yaml", "zone", "list"}).code, kExitUsage);
  EXPECT_EQ(Call({"stats", "--scope", "planet=3"}).code, kExitUsage);
  EXPECT_EQ(Call({"ad", "add", "--campaign", "1", "--landing-url", "x",
                  "--width", "1", "--height", "1", "--bid", "abc"}).code,
            kExitUsage);
  EXPECT_EQ(Call({"--help"}).code, kExitOk);
}

TEST_F(OpctlTest, WrongTokenExitsOne) {
  Result r = Call({"--token", "wrong", "zone", "list"});
  EXPECT_EQ(r.code, kExitApiError);
  EXPECT_NE(r.err.find("401"), std::string::npos);
}

TEST(OpctlStandaloneTest, UnreachableServerNamesUrl) {
  std::ostringstream out, err;
  int code = opctl::Run({"--url", "http://127.0.0.1:1", "zone", "list"}, out, err, {});
  EXPECT_EQ(code, kExitApiError);
  EXPECT_NE(err.str().find("http://127.0.0.1:1"), std::string::npos) << err.str();
}

TEST_F(OpctlTest, FixtureLoadThenServe) {
  Result r = Call({"--format", "json", "fixture", "load", testing::FixtureDir().string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  json ids = json::parse(r.out);
  EXPECT_EQ(Api("/api/ads").size(), 15u);
  EXPECT_EQ(Api("/api/zones").size(), 9u);

  std::string zone = std::to_string(ids["bridalsnaps-leaderboard"].get<Id>());
  auto served = server_.Client(false).Get("/ad?format=json&zoneid=" + zone);
  ASSERT_EQ(served->status, 200);
  json ads = json::parse(served->body);
  ASSERT_EQ(ads.size(), 1u);
  EXPECT_EQ(ads[0]["ad_id"], ids["wedding-planner"]);

  Result stats = Call({"stats", "--scope", "zone=" + zone});
  ASSERT_EQ(stats.code, kExitOk) << stats.err;
  json s = Api("/api/stats?zone=" + zone);
  EXPECT_EQ(s["impressions"], 1);
  std::istringstream lines(stats.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  std::istringstream cells(row);
  std::vector<std::string> c;
  for (std::string w; cells >> w;) c.push_back(w);
  ASSERT_EQ(c.size(), 7u) << row;
  EXPECT_EQ(c[0], "zone=" + zone);
  EXPECT_EQ(c[1], s["from"]);
  EXPECT_EQ(c[2], s["to"]);
  EXPECT_EQ(c[3], "1");
  EXPECT_EQ(c[4], "0");
  EXPECT_EQ(c[6], "0.000000");
}

TEST_F(OpctlTest, FixtureLoadMissingDirIsUsage) {
  EXPECT_EQ(Call({"fixture", "load", "/nonexistent/dir"}).code, kExitUsage);
}

}  // namespace
}  // namespace adserve::opctl
