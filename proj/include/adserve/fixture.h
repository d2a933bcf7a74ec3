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

// Demo inventory files. A fixture directory holds fixture.json, whose
// entities name each other by symbolic "key" instead of id:
//
//   {"advertisers": [{"key": "lensmart", "name": ...}],
//    "campaigns":   [{"key": "gear", "advertiser": "lensmart", ...}],
//    "ads":         [{"key": "c1", "campaign": "gear", ...}],
//    "websites":    [{"key": "picstop", "context_file": "pages/x.txt", ...}],
//    "zones":       [{"key": "picstop-top", "website": "picstop", ...}],
//    "links":       [{"zone": "picstop-top", "campaign": "gear"}],
//    "targeting":   [{"ad": "c1", "dimension": "country", "values": [...]}]}
//
// "context_file" paths are relative to the directory and are inlined as
// context_doc when the fixture is read.

#ifndef ADSERVE_FIXTURE_H_
#define ADSERVE_FIXTURE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adserve/inventory.h"
#include "json.hpp"

namespace adserve {

struct FixtureStep {
  EntityKind kind;
  std::string key;  // empty for links and targeting rules
  nlohmann::json fields;
  // (id field, referenced key), e.g. ("campaign_id", "gear").
  std::vector<std::pair<std::string, std::string>> refs;
};

struct Fixture {
  std::vector<FixtureStep> steps;  // in dependency order
};

// Throws std::runtime_error naming the file on any read or format error.
Fixture LoadFixture(const std::filesystem::path& dir);

// Called once per step with the fields after key -> id substitution;
// returns the created id (ignored for links).
using FixtureCreate =
    std::function<Id(const FixtureStep& step, const nlohmann::json& fields)>;

// Returns key -> id for every keyed entity.
std::map<std::string, Id> ExecuteFixture(const Fixture& fixture,
                                         const FixtureCreate& create);

// Registers the fixture directly into an inventory.
std::map<std::string, Id> LoadFixtureInto(Inventory& inventory,
                                          const std::filesystem::path& dir);

}  // namespace adserve

#endif  // ADSERVE_FIXTURE_H_
