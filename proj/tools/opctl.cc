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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "adserve/common.h"
#include "adserve/fixture.h"
#include "adserve/gateway.h"
#include "httplib.h"
#include "json.hpp"

namespace adserve::opctl {

using nlohmann::json;

namespace {

// Reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reported with exit code 1.
class ApiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reply {
  int status = 0;
  std::string body;
};

class Api {
 public:
  Api(std::string url, std::string token)
      : url_(std::move(url)), token_(std::move(token)) {
    while (!url_.empty() && url_.back() == '/') url_.pop_back();
    size_t scheme = url_.find("://");
    size_t path = url_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    std::string origin = url_.substr(0, path);
    if (path != std::string::npos) prefix_ = url_.substr(path);
    client_ = std::make_unique<httplib::Client>(origin);
    if (!client_->is_valid()) throw UsageError("invalid server URL: " + url_);
    client_->set_connection_timeout(std::chrono::seconds(5));
    client_->set_read_timeout(std::chrono::seconds(30));
  }

  Reply Get(const std::string& path, const httplib::Params& params = {}) {
    return Check(client_->Get(prefix_ + path, params, Headers()));
  }
  Reply Post(const std::string& path, const json& body) {
    return Check(client_->Post(prefix_ + path, Headers(), body.dump(),
                               "application/json"));
  }
  Reply Put(const std::string& path, const json& body) {
    return Check(client_->Put(prefix_ + path, Headers(), body.dump(),
                              "application/json"));
  }

 private:
  httplib::Headers Headers() const {
    httplib::Headers h;
    if (!token_.empty()) h.emplace(std::string(kAdminTokenHeader), token_);
    return h;
  }

  Reply Check(const httplib::Result& res) const {
    if (!res) {
      throw ApiError("cannot reach server at " + url_ + ": " +
                     httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      std::string message = res->body;
      json j = json::parse(res->body, nullptr, false);
      if (j.is_object() && j.contains("error")) {
        message = j["error"].get<std::string>();
        if (j.contains("field") && j["field"].is_string()) {
          message += " (field " + j["field"].get<std::string>() + ")";
        }
      }
      throw ApiError("HTTP " + std::to_string(res->status) + " from " + url_ +
                     ": " + message);
    }
    return {res->status, res->body};
  }

  std::string url_;
  std::string prefix_;
  std::string token_;
  std::unique_ptr<httplib::Client> client_;
};

json ParseJson(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw ApiError("server sent malformed JSON");
  return j;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::int64_t ToInt(const std::string& flag, const std::string& text) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw UsageError(flag + ": expected an integer, got '" + text + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Tables

void PrintTable(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::string Cell(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

struct Column {
  const char* header;
  const char* field;
  bool money = false;
};

std::vector<std::string> Row(const json& entity,
                             const std::vector<Column>& columns) {
  std::vector<std::string> row;
  for (const Column& col : columns) {
    const json& v = entity.contains(col.field) ? entity[col.field] : json();
    if (col.money && v.is_number_integer()) {
      row.push_back(FormatMoney(Money(v.get<std::int64_t>())));
    } else {
      row.push_back(Cell(v));
    }
  }
  return row;
}

void PrintEntities(std::ostream& out, const json& list,
                   const std::vector<Column>& columns) {
  std::vector<std::string> header;
  for (const Column& c : columns) header.push_back(c.header);
  std::vector<std::vector<std::string>> rows;
  for (const json& e : list) rows.push_back(Row(e, columns));
  PrintTable(out, header, rows);
}

// ---------------------------------------------------------------------------
// Entity add/list

enum class FieldType { kString, kInt, kDouble, kMoney, kList, kFile };

struct FieldSpec {
  const char* flag;
  const char* field;
  FieldType type;
  bool required;
  const char* help;
};

struct EntitySpec {
  const char* command;
  const char* resource;
  std::vector<FieldSpec> fields;
  std::vector<Column> columns;
};

const std::vector<EntitySpec>& EntitySpecs() {
  using T = FieldType;
  static const std::vector<EntitySpec> specs = {
      {"advertiser",
       "advertisers",
       {{"--name", "name", T::kString, true, "Advertiser name"},
        {"--contact", "contact", T::kString, false, "Contact person"},
        {"--email", "email", T::kString, false, "Contact email"}},
       {{"ID", "id"}, {"NAME", "name"}, {"EMAIL", "email"},
        {"DISABLED", "disabled"}}},
      {"campaign",
       "campaigns",
       {{"--advertiser", "advertiser_id", T::kInt, true, "Advertiser id"},
        {"--name", "name", T::kString, true, "Campaign name"},
        {"--start", "start_date", T::kString, false, "First day, YYYY-MM-DD"},
        {"--end", "end_date", T::kString, false, "Last day, YYYY-MM-DD"}},
       {{"ID", "id"}, {"ADVERTISER", "advertiser_id"}, {"NAME", "name"},
        {"START", "start_date"}, {"END", "end_date"},
        {"DISABLED", "disabled"}}},
      {"ad",
       "ads",
       {{"--campaign", "campaign_id", T::kInt, true, "Campaign id"},
        {"--title", "title", T::kString, false, "Headline"},
        {"--description", "description", T::kString, false, "Body text"},
        {"--display-url", "display_url", T::kString, false, "Shown URL"},
        {"--landing-url", "landing_url", T::kString, true, "Click target"},
        {"--creative", "creative_ref", T::kString, false,
         "Image URL or HTML markup"},
        {"--width", "width", T::kInt, true, "Pixels"},
        {"--height", "height", T::kInt, true, "Pixels"},
        {"--keyword", "keywords", T::kList, false, "Keyword (repeatable)"},
        {"--bid", "bid", T::kMoney, false, "Bid per click, e.g. 1.25"},
        {"--weight", "weight", T::kInt, false, "Rotation weight"}},
       {{"ID", "id"}, {"CAMPAIGN", "campaign_id"}, {"TITLE", "title"},
        {"WIDTH", "width"}, {"HEIGHT", "height"}, {"BID", "bid", true},
        {"DISABLED", "disabled"}}},
      {"website",
       "websites",
       {{"--name", "name", T::kString, true, "Site name"},
        {"--url", "url", T::kString, false, "Site URL"},
        {"--context-file", "context_doc", T::kFile, false,
         "File holding the page text"}},
       {{"ID", "id"}, {"NAME", "name"}, {"URL", "url"},
        {"DISABLED", "disabled"}}},
      {"zone",
       "zones",
       {{"--website", "website_id", T::kInt, true, "Website id"},
        {"--name", "name", T::kString, true, "Zone name"},
        {"--description", "description", T::kString, false, "Notes"},
        {"--width", "width", T::kInt, true, "Pixels"},
        {"--height", "height", T::kInt, true, "Pixels"},
        {"--capacity", "capacity", T::kInt, false, "Ads per request (1-5)"},
        {"--source", "source_label", T::kString, false, "Section label"},
        {"--mode", "mode", T::kString, false,
         "static_links, stored_context or request_context"},
        {"--threshold", "relevance_threshold", T::kDouble, false,
         "Minimum relevance"},
        {"--context-file", "context_doc", T::kFile, false,
         "File holding the zone's page text"}},
       {{"ID", "id"}, {"WEBSITE", "website_id"}, {"NAME", "name"},
        {"WIDTH", "width"}, {"HEIGHT", "height"},
        {"CAPACITY", "capacity"}, {"MODE", "mode"},
        {"SOURCE", "source_label"}, {"DISABLED", "disabled"}}},
  };
  return specs;
}

struct EntityArgs {
  const EntitySpec* spec = nullptr;
  CLI::App* add = nullptr;
  CLI::App* list = nullptr;
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::vector<std::string>> lists;
};

json BuildBody(const EntityArgs& args) {
  json body = json::object();
  for (const FieldSpec& f : args.spec->fields) {
    if (f.type == FieldType::kList) {
      auto it = args.lists.find(f.field);
      if (it != args.lists.end() && !it->second.empty()) {
        body[f.field] = it->second;
      }
      continue;
    }
    auto it = args.scalars.find(f.field);
    if (it == args.scalars.end()) continue;
    const std::string& v = it->second;
    switch (f.type) {
      case FieldType::kString: body[f.field] = v; break;
      case FieldType::kInt: body[f.field] = ToInt(f.flag, v); break;
      case FieldType::kDouble:
        try {
          size_t used = 0;
          double d = std::stod(v, &used);
          if (used != v.size()) throw std::invalid_argument(v);
          body[f.field] = d;
        } catch (const std::exception&) {
          throw UsageError(std::string(f.flag) + ": expected a number");
        }
        break;
      case FieldType::kMoney: {
        auto m = ParseMoney(v);
        if (!m) throw UsageError(std::string(f.flag) + ": expected an amount");
        body[f.field] = m->micros;
        break;
      }
      case FieldType::kFile: body[f.field] = ReadFile(v); break;
      case FieldType::kList: break;
    }
  }
  return body;
}

// ---------------------------------------------------------------------------

struct Globals {
  std::string url;
  std::string token;
  std::string format = "table";
  bool json() const { return format == "json"; }
};

void PrintRaw(std::ostream& out, const std::string& body) {
  out << body;
  if (body.empty() || body.back() != '\n') out << "\n";
}

std::string ScopeText(const json& scope) {
  std::string s;
  for (const char* k : {"advertiser", "campaign", "ad", "website", "zone"}) {
    if (scope.contains(k) && !scope[k].is_null()) {
      if (!s.empty()) s += ",";
      s += std::string(k) + "=" + scope[k].dump();
    }
  }
  return s.empty() ? "all" : s;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::map<std::string, std::string>& env) {
  Globals g;
  auto env_or = [&](const char* name, std::string fallback) {
    auto it = env.find(name);
    return it != env.end() && !it->second.empty() ? it->second : fallback;
  };
  g.url = env_or("ADSERVE_URL", kDefaultUrl);
  g.token = env_or("ADSERVE_TOKEN", "");

  CLI::App app{"Administer an adserve gateway.", "opctl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--url", g.url, "Gateway base URL (env ADSERVE_URL)");
  app.add_option("--token", g.token, "Admin token (env ADSERVE_TOKEN)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));

  std::vector<EntityArgs> entities;
  entities.reserve(EntitySpecs().size());
  for (const EntitySpec& spec : EntitySpecs()) {
    EntityArgs& e = entities.emplace_back();
    e.spec = &spec;
    CLI::App* cmd = app.add_subcommand(spec.command,
                                       "Manage " + std::string(spec.resource));
    cmd->require_subcommand(1);
    e.add = cmd->add_subcommand("add", "Create one");
    e.list = cmd->add_subcommand("list", "List all");
    for (const FieldSpec& f : spec.fields) {
      CLI::Option* opt;
      if (f.type == FieldType::kList) {
        opt = e.add->add_option(f.flag, e.lists[f.field], f.help);
      } else {
        opt = e.add->add_option_function<std::string>(
            f.flag,
            [&e, field = f.field](const std::string& v) {
              e.scalars[field] = v;
            },
            f.help);
      }
      if (f.required) opt->required();
    }
  }

  std::string link_zone, link_campaign, link_ad;
  bool link_disable = false;
  CLI::App* link = app.add_subcommand("link", "Link a campaign or ad to a zone");
  link->add_option("--zone", link_zone, "Zone id")->required();
  auto* link_c = link->add_option("--campaign", link_campaign, "Campaign id");
  auto* link_a = link->add_option("--ad", link_ad, "Ad id");
  link_c->excludes(link_a);
  link->add_flag("--disable", link_disable, "Unlink instead");

  std::string rule_campaign, rule_ad, rule_dimension;
  std::vector<std::string> rule_values;
  CLI::App* target = app.add_subcommand("target", "Targeting rules");
  target->require_subcommand(1);
  CLI::App* target_set = target->add_subcommand("set", "Set one rule");
  auto* rule_c = target_set->add_option("--campaign", rule_campaign, "Owner campaign id");
  auto* rule_a = target_set->add_option("--ad", rule_ad, "Owner ad id");
  rule_c->excludes(rule_a);
  target_set->add_option("--dimension", rule_dimension,
                         "date, day_of_week, time_of_day, country, city, "
                         "browser, language or source")
      ->required();
  target_set->add_option("--value", rule_values, "Accepted value (repeatable)")
      ->required();

  std::string tag_zone;
  CLI::App* tag = app.add_subcommand("tag", "Print a zone's invocation tag");
  tag->add_option("--zone", tag_zone, "Zone id")->required();

  std::vector<std::string> stats_scope;
  std::string stats_from, stats_to;
  CLI::App* stats = app.add_subcommand("stats", "Impressions, clicks and CTR");
  stats->add_option("--scope", stats_scope,
                    "kind=id with kind advertiser, campaign, ad, website or "
                    "zone (repeatable)");
  stats->add_option("--from", stats_from, "Range start, inclusive");
  stats->add_option("--to", stats_to, "Range end, exclusive");

  std::string fixture_dir;
  CLI::App* fixture = app.add_subcommand("fixture", "Bulk inventory loading");
  fixture->require_subcommand(1);
  CLI::App* fixture_load = fixture->add_subcommand("load", "Load a fixture directory");
  fixture_load->add_option("dir", fixture_dir, "Directory with fixture.json")
      ->required();

  std::vector<std::string> argv_store;
  argv_store.push_back("opctl");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "opctl: " << e.what() << "\n";
    err << "Run 'opctl --help' for usage.\n";
    return kExitUsage;
  }

  try {
    Api api(g.url, g.token);

    for (EntityArgs& e : entities) {
      if (e.add->parsed()) {
        json body = BuildBody(e);
        Reply r = api.Post("/api/" + std::string(e.spec->resource), body);
        if (g.json()) {
          PrintRaw(out, r.body);
        } else {
          out << ParseJson(r.body).at("id").get<Id>() << "\n";
        }
        return kExitOk;
      }
      if (e.list->parsed()) {
        Reply r = api.Get("/api/" + std::string(e.spec->resource));
        if (g.json()) {
          PrintRaw(out, r.body);
        } else {
          PrintEntities(out, ParseJson(r.body), e.spec->columns);
        }
        return kExitOk;
      }
    }

    if (link->parsed()) {
      if (link_campaign.empty() == link_ad.empty()) {
        throw UsageError("link needs exactly one of --campaign or --ad");
      }
      json body = {{"zone_id", ToInt("--zone", link_zone)}};
      if (!link_campaign.empty()) {
        body["campaign_id"] = ToInt("--campaign", link_campaign);
      } else {
        body["ad_id"] = ToInt("--ad", link_ad);
      }
      Reply r;
      if (link_disable) {
        body["disabled"] = true;
        r = api.Put("/api/links", body);
      } else {
        r = api.Post("/api/links", body);
      }
      if (g.json()) {
        PrintRaw(out, r.body);
      } else {
        json l = ParseJson(r.body);
        bool by_campaign = l.contains("campaign_id");
        PrintTable(out, {"ZONE", "TARGET", "ID", "DISABLED"},
                   {{Cell(l["zone_id"]), by_campaign ? "campaign" : "ad",
                     Cell(by_campaign ? l["campaign_id"] : l["ad_id"]),
                     Cell(l["disabled"])}});
      }
      return kExitOk;
    }

    if (target_set->parsed()) {
      if (rule_campaign.empty() == rule_ad.empty()) {
        throw UsageError("target set needs exactly one of --campaign or --ad");
      }
      json body = {{"dimension", rule_dimension}, {"values", rule_values}};
      if (!rule_campaign.empty()) {
        body["campaign_id"] = ToInt("--campaign", rule_campaign);
      } else {
        body["ad_id"] = ToInt("--ad", rule_ad);
      }
      Reply r = api.Post("/api/targeting", body);
      if (g.json()) {
        PrintRaw(out, r.body);
      } else {
        out << ParseJson(r.body).at("id").get<Id>() << "\n";
      }
      return kExitOk;
    }

    if (tag->parsed()) {
      ToInt("--zone", tag_zone);
      Reply r = api.Get("/api/tag", {{"zoneid", tag_zone}});
      if (g.json()) {
        PrintRaw(out, r.body);
      } else {
        out << ParseJson(r.body).at("tag").get<std::string>() << "\n";
      }
      return kExitOk;
    }

    if (stats->parsed()) {
      httplib::Params params;
      for (const std::string& s : stats_scope) {
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
          throw UsageError("--scope expects kind=id, got '" + s + "'");
        }
        std::string kind = s.substr(0, eq);
        static const std::set<std::string> kKinds = {
            "advertiser", "campaign", "ad", "website", "zone"};
        if (!kKinds.count(kind)) {
          throw UsageError("--scope: unknown kind '" + kind + "'");
        }
        ToInt("--scope", s.substr(eq + 1));
        params.emplace(kind, s.substr(eq + 1));
      }
      if (!stats_from.empty()) params.emplace("from", stats_from);
      if (!stats_to.empty()) params.emplace("to", stats_to);
      Reply r = api.Get("/api/stats", params);
      if (g.json()) {
        PrintRaw(out, r.body);
      } else {
        json s = ParseJson(r.body);
        PrintTable(out,
                   {"SCOPE", "FROM", "TO", "IMPRESSIONS", "CLICKS", "CTR",
                    "REVENUE"},
                   {{ScopeText(s["scope"]), Cell(s["from"]), Cell(s["to"]),
                     Cell(s["impressions"]), Cell(s["clicks"]), Cell(s["ctr"]),
                     FormatMoney(Money(s["revenue"].get<std::int64_t>()))}});
      }
      return kExitOk;
    }

    if (fixture_load->parsed()) {
      Fixture fx;
      try {
        fx = LoadFixture(fixture_dir);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      std::map<std::string, Id> ids = ExecuteFixture(
          fx, [&](const FixtureStep& step, const json& fields) -> Id {
            const char* resource = "";
            switch (step.kind) {
              case EntityKind::kAdvertiser: resource = "advertisers"; break;
              case EntityKind::kCampaign: resource = "campaigns"; break;
              case EntityKind::kAd: resource = "ads"; break;
              case EntityKind::kWebsite: resource = "websites"; break;
              case EntityKind::kZone: resource = "zones"; break;
              case EntityKind::kLink: resource = "links"; break;
              case EntityKind::kTargeting: resource = "targeting"; break;
            }
            json created =
                ParseJson(api.Post("/api/" + std::string(resource), fields).body);
            return created.contains("id") ? created["id"].get<Id>() : 0;
          });
      if (g.json()) {
        out << json(ids).dump() << "\n";
      } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [key, id] : ids) rows.push_back({key, std::to_string(id)});
        PrintTable(out, {"KEY", "ID"}, rows);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "opctl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    err << "opctl: " << e.what() << "\n";
    return kExitApiError;
  } catch (const std::exception& e) {
    err << "opctl: " << e.what() << "\n";
    return kExitApiError;
  }

  err << app.help();
  return kExitUsage;
}

}  // namespace adserve::opctl
