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

#include "adserve/fixture.h"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adserve {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RefField {
  const char* key_field;
  const char* id_field;
};

constexpr std::array<RefField, 5> kRefFields = {{{"advertiser", "advertiser_id"},
                                                 {"campaign", "campaign_id"},
                                                 {"ad", "ad_id"},
                                                 {"website", "website_id"},
                                                 {"zone", "zone_id"}}};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Fixture LoadFixture(const fs::path& dir) {
  const fs::path file = dir / "fixture.json";
  json doc = json::parse(ReadFile(file), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw std::runtime_error(file.string() + ": not a JSON object");
  }

  const std::array<std::pair<const char*, EntityKind>, 7> sections = {{
      {"advertisers", EntityKind::kAdvertiser},
      {"campaigns", EntityKind::kCampaign},
      {"ads", EntityKind::kAd},
      {"websites", EntityKind::kWebsite},
      {"zones", EntityKind::kZone},
      {"links", EntityKind::kLink},
      {"targeting", EntityKind::kTargeting},
  }};

  Fixture fixture;
  for (const auto& [section, kind] : sections) {
    if (!doc.contains(section)) continue;
    if (!doc[section].is_array()) {
      throw std::runtime_error(file.string() + ": '" + section +
                               "' must be an array");
    }
    for (const json& entry : doc[section]) {
      if (!entry.is_object()) {
        throw std::runtime_error(file.string() + ": entries of '" + section +
                                 "' must be objects");
      }
      FixtureStep step{kind, "", json::object(), {}};
      for (const auto& [name, value] : entry.items()) {
        if (name == "key") {
          step.key = value.get<std::string>();
          continue;
        }
        if (name == "context_file") {
          step.fields["context_doc"] = ReadFile(dir / value.get<std::string>());
          continue;
        }
        bool is_ref = false;
        for (const RefField& ref : kRefFields) {
          if (name == ref.key_field) {
            step.refs.emplace_back(ref.id_field, value.get<std::string>());
            is_ref = true;
          }
        }
        if (!is_ref) step.fields[name] = value;
      }
      bool keyed = kind != EntityKind::kLink && kind != EntityKind::kTargeting;
      if (keyed && step.key.empty()) {
        throw std::runtime_error(file.string() + ": every entry of '" +
                                 section + "' needs a key");
      }
      fixture.steps.push_back(std::move(step));
    }
  }
  return fixture;
}

std::map<std::string, Id> ExecuteFixture(const Fixture& fixture,
                                         const FixtureCreate& create) {
  std::map<std::string, Id> ids;
  for (const FixtureStep& step : fixture.steps) {
    json fields = step.fields;
    for (const auto& [field, key] : step.refs) {
      auto it = ids.find(key);
      if (it == ids.end()) {
        throw std::runtime_error("fixture refers to unknown key '" + key + "'");
      }
      fields[field] = it->second;
    }
    Id id = create(step, fields);
    if (!step.key.empty()) {
      if (!ids.emplace(step.key, id).second) {
        throw std::runtime_error("duplicate fixture key '" + step.key + "'");
      }
    }
  }
  return ids;
}

std::map<std::string, Id> LoadFixtureInto(Inventory& inventory,
                                          const fs::path& dir) {
  return ExecuteFixture(
      LoadFixture(dir), [&](const FixtureStep& step, const json& fields) -> Id {
        if (step.kind == EntityKind::kLink) {
          Link link = LinkFromJson(fields);
          inventory.AddLink(link.zone_id, link.target);
          return 0;
        }
        return inventory.Register(step.kind, fields);
      });
}

}  // namespace adserve
