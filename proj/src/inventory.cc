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

#include "adserve/inventory.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace adserve {

using nlohmann::json;
using Code = InventoryError::Code;

namespace {

[[noreturn]] void Invalid(const std::string& field, const std::string& what) {
  throw InventoryError(Code::kInvariant, field, field + ": " + what);
}

[[noreturn]] void Dangling(const std::string& field, Id id) {
  throw InventoryError(Code::kDanglingReference, field,
                       field + ": no entity with id " + std::to_string(id));
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Field readers. Absent and null both mean "not provided".
bool Has(const json& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && !it->is_null();
}

std::string GetString(const json& j, const char* key, bool required,
                      std::string fallback = {}) {
  if (!Has(j, key)) {
    if (required) Invalid(key, "is required");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_string()) Invalid(key, "must be a string");
  return v.get<std::string>();
}

std::optional<std::string> GetOptString(const json& j, const char* key) {
  if (!Has(j, key)) return std::nullopt;
  return GetString(j, key, true);
}

std::int64_t GetInt(const json& j, const char* key, bool required,
                    std::int64_t fallback = 0) {
  if (!Has(j, key)) {
    if (required) Invalid(key, "is required");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number_integer()) Invalid(key, "must be an integer");
  return v.get<std::int64_t>();
}

int GetSmallInt(const json& j, const char* key, bool required,
                int fallback = 0) {
  std::int64_t v = GetInt(j, key, required, fallback);
  if (v < -1'000'000'000 || v > 1'000'000'000) Invalid(key, "out of range");
  return static_cast<int>(v);
}

bool GetBool(const json& j, const char* key) {
  if (!Has(j, key)) return false;
  const json& v = j.at(key);
  if (!v.is_boolean()) Invalid(key, "must be a boolean");
  return v.get<bool>();
}

std::optional<Date> GetOptDate(const json& j, const char* key) {
  auto s = GetOptString(j, key);
  if (!s) return std::nullopt;
  auto d = ParseDate(*s);
  if (!d) Invalid(key, "must be a YYYY-MM-DD date");
  return d;
}

json OptJson(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

json OptJson(const std::optional<Date>& d) {
  return d ? json(FormatDate(*d)) : json(nullptr);
}

void RequireObject(const json& j) {
  if (!j.is_object()) {
    throw InventoryError(Code::kInvariant, "", "body must be a JSON object");
  }
}

LinkTarget TargetFromJson(const json& j) {
  bool has_campaign = Has(j, "campaign_id");
  bool has_ad = Has(j, "ad_id");
  if (has_campaign == has_ad) {
    Invalid("target", "exactly one of campaign_id or ad_id is required");
  }
  if (has_campaign) {
    return {TargetKind::kCampaign, GetInt(j, "campaign_id", true)};
  }
  return {TargetKind::kAd, GetInt(j, "ad_id", true)};
}

void TargetToJson(const LinkTarget& t, json& j) {
  j[t.kind == TargetKind::kCampaign ? "campaign_id" : "ad_id"] = t.id;
}

bool Fits(const Ad& ad, const Zone& zone) {
  return ad.width <= zone.width && ad.height <= zone.height;
}

struct DayName {
  const char* abbrev;
  const char* full;
};
constexpr std::array<DayName, 7> kDays = {{{"mon", "monday"},
                                           {"tue", "tuesday"},
                                           {"wed", "wednesday"},
                                           {"thu", "thursday"},
                                           {"fri", "friday"},
                                           {"sat", "saturday"},
                                           {"sun", "sunday"}}};

bool ParseClock(std::string_view s, int* minutes_of_day, bool allow_24) {
  if (s.size() != 5 || s[2] != ':') return false;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!digit(s[0]) || !digit(s[1]) || !digit(s[3]) || !digit(s[4])) {
    return false;
  }
  int hh = (s[0] - '0') * 10 + (s[1] - '0');
  int mm = (s[3] - '0') * 10 + (s[4] - '0');
  if (mm > 59) return false;
  if (hh > 23 && !(allow_24 && hh == 24 && mm == 0)) return false;
  *minutes_of_day = hh * 60 + mm;
  return true;
}

}  // namespace

std::string_view EntityKindName(EntityKind kind) {
  switch (kind) {
    case EntityKind::kAdvertiser: return "advertiser";
    case EntityKind::kCampaign: return "campaign";
    case EntityKind::kAd: return "ad";
    case EntityKind::kWebsite: return "website";
    case EntityKind::kZone: return "zone";
    case EntityKind::kLink: return "link";
    case EntityKind::kTargeting: return "targeting";
  }
  return "?";
}

std::optional<EntityKind> ParseEntityKind(std::string_view name) {
  for (auto k : {EntityKind::kAdvertiser, EntityKind::kCampaign,
                 EntityKind::kAd, EntityKind::kWebsite, EntityKind::kZone,
                 EntityKind::kLink, EntityKind::kTargeting}) {
    if (EntityKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view ZoneModeName(ZoneMode mode) {
  switch (mode) {
    case ZoneMode::kStaticLinks: return "static_links";
    case ZoneMode::kStoredContext: return "stored_context";
    case ZoneMode::kRequestContext: return "request_context";
  }
  return "?";
}

std::optional<ZoneMode> ParseZoneMode(std::string_view name) {
  for (auto m : {ZoneMode::kStaticLinks, ZoneMode::kStoredContext,
                 ZoneMode::kRequestContext}) {
    if (ZoneModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view DimensionName(Dimension d) {
  switch (d) {
    case Dimension::kDate: return "date";
    case Dimension::kDayOfWeek: return "day_of_week";
    case Dimension::kTimeOfDay: return "time_of_day";
    case Dimension::kCountry: return "country";
    case Dimension::kCity: return "city";
    case Dimension::kBrowser: return "browser";
    case Dimension::kLanguage: return "language";
    case Dimension::kSource: return "source";
  }
  return "?";
}

std::optional<Dimension> ParseDimension(std::string_view name) {
  for (auto d : {Dimension::kDate, Dimension::kDayOfWeek,
                 Dimension::kTimeOfDay, Dimension::kCountry, Dimension::kCity,
                 Dimension::kBrowser, Dimension::kLanguage,
                 Dimension::kSource}) {
    if (DimensionName(d) == name) return d;
  }
  return std::nullopt;
}

std::optional<std::string> CanonicalRuleValue(Dimension dimension,
                                              std::string_view raw) {
  std::string value = Trim(raw);
  if (value.empty()) return std::nullopt;
  switch (dimension) {
    case Dimension::kDate: {
      auto sep = value.find("..");
      if (sep == std::string::npos) {
        if (!ParseDate(value)) return std::nullopt;
        return value;
      }
      auto from = ParseDate(std::string_view(value).substr(0, sep));
      auto to = ParseDate(std::string_view(value).substr(sep + 2));
      if (!from || !to || *to < *from) return std::nullopt;
      return value;
    }
    case Dimension::kDayOfWeek: {
      std::string lower = Lower(value);
      for (const auto& d : kDays) {
        if (lower == d.abbrev || lower == d.full) return std::string(d.abbrev);
      }
      return std::nullopt;
    }
    case Dimension::kTimeOfDay: {
      int from, to;
      if (value.size() != 11 || value[5] != '-') return std::nullopt;
      if (!ParseClock(std::string_view(value).substr(0, 5), &from, false) ||
          !ParseClock(std::string_view(value).substr(6), &to, true) ||
          from == to) {
        return std::nullopt;
      }
      return value;
    }
    case Dimension::kLanguage:
      return Lower(value);
    case Dimension::kCountry:
    case Dimension::kCity:
    case Dimension::kBrowser:
    case Dimension::kSource:
      return value;
  }
  return std::nullopt;
}

bool CampaignActiveAt(const Campaign& campaign, Instant instant,
                      std::chrono::minutes offset) {
  Date day = LocalDate(instant, offset);
  if (campaign.start_date && day < *campaign.start_date) return false;
  if (campaign.end_date && day > *campaign.end_date) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON codecs

json ToJson(const Advertiser& a) {
  return {{"id", a.id},
          {"name", a.name},
          {"contact", a.contact},
          {"email", a.email},
          {"disabled", a.disabled}};
}

json ToJson(const Campaign& c) {
  return {{"id", c.id},
          {"advertiser_id", c.advertiser_id},
          {"name", c.name},
          {"kind", "contract"},
          {"start_date", OptJson(c.start_date)},
          {"end_date", OptJson(c.end_date)},
          {"disabled", c.disabled}};
}

json ToJson(const Ad& a) {
  return {{"id", a.id},
          {"campaign_id", a.campaign_id},
          {"title", a.title},
          {"description", a.description},
          {"display_url", a.display_url},
          {"landing_url", a.landing_url},
          {"creative_ref", a.creative_ref},
          {"width", a.width},
          {"height", a.height},
          {"keywords", a.keywords},
          {"bid", a.bid.micros},
          {"weight", a.weight},
          {"disabled", a.disabled}};
}

json ToJson(const Website& w) {
  return {{"id", w.id},
          {"name", w.name},
          {"url", w.url},
          {"context_doc", OptJson(w.context_doc)},
          {"disabled", w.disabled}};
}

json ToJson(const Zone& z) {
  return {{"id", z.id},
          {"website_id", z.website_id},
          {"name", z.name},
          {"description", z.description},
          {"width", z.width},
          {"height", z.height},
          {"capacity", z.capacity},
          {"source_label", OptJson(z.source_label)},
          {"context_doc", OptJson(z.context_doc)},
          {"mode", ZoneModeName(z.mode)},
          {"relevance_threshold", z.relevance_threshold
                                      ? json(*z.relevance_threshold)
                                      : json(nullptr)},
          {"disabled", z.disabled}};
}

json ToJson(const Link& l) {
  json j = {{"zone_id", l.zone_id}, {"disabled", l.disabled}};
  TargetToJson(l.target, j);
  return j;
}

json ToJson(const TargetingRule& r) {
  json j = {{"id", r.id},
            {"dimension", DimensionName(r.dimension)},
            {"values", r.values},
            {"disabled", r.disabled}};
  TargetToJson(r.owner, j);
  return j;
}

Advertiser AdvertiserFromJson(const json& j) {
  RequireObject(j);
  Advertiser a;
  a.id = GetInt(j, "id", false);
  a.name = GetString(j, "name", true);
  a.contact = GetString(j, "contact", false);
  a.email = GetString(j, "email", false);
  a.disabled = GetBool(j, "disabled");
  return a;
}

Campaign CampaignFromJson(const json& j) {
  RequireObject(j);
  Campaign c;
  c.id = GetInt(j, "id", false);
  c.advertiser_id = GetInt(j, "advertiser_id", true);
  c.name = GetString(j, "name", true);
  std::string kind = GetString(j, "kind", false, "contract");
  if (kind != "contract") Invalid("kind", "only 'contract' is supported");
  c.start_date = GetOptDate(j, "start_date");
  c.end_date = GetOptDate(j, "end_date");
  c.disabled = GetBool(j, "disabled");
  return c;
}

Ad AdFromJson(const json& j) {
  RequireObject(j);
  Ad a;
  a.id = GetInt(j, "id", false);
  a.campaign_id = GetInt(j, "campaign_id", true);
  a.title = GetString(j, "title", false);
  a.description = GetString(j, "description", false);
  a.display_url = GetString(j, "display_url", false);
  a.landing_url = GetString(j, "landing_url", true);
  a.creative_ref = GetString(j, "creative_ref", false);
  a.width = GetSmallInt(j, "width", true);
  a.height = GetSmallInt(j, "height", true);
  if (Has(j, "keywords")) {
    const json& kw = j.at("keywords");
    if (!kw.is_array()) Invalid("keywords", "must be an array of strings");
    for (const json& k : kw) {
      if (!k.is_string()) Invalid("keywords", "must be an array of strings");
      std::string term = Lower(Trim(k.get<std::string>()));
      if (!term.empty()) a.keywords.insert(std::move(term));
    }
  }
  a.bid = Money(GetInt(j, "bid", false, 0));
  a.weight = GetSmallInt(j, "weight", false, 1);
  a.disabled = GetBool(j, "disabled");
  return a;
}

Website WebsiteFromJson(const json& j) {
  RequireObject(j);
  Website w;
  w.id = GetInt(j, "id", false);
  w.name = GetString(j, "name", true);
  w.url = GetString(j, "url", false);
  w.context_doc = GetOptString(j, "context_doc");
  w.disabled = GetBool(j, "disabled");
  return w;
}

Zone ZoneFromJson(const json& j) {
  RequireObject(j);
  Zone z;
  z.id = GetInt(j, "id", false);
  z.website_id = GetInt(j, "website_id", true);
  z.name = GetString(j, "name", true);
  z.description = GetString(j, "description", false);
  z.width = GetSmallInt(j, "width", true);
  z.height = GetSmallInt(j, "height", true);
  z.capacity = GetSmallInt(j, "capacity", false, 3);
  z.source_label = GetOptString(j, "source_label");
  z.context_doc = GetOptString(j, "context_doc");
  std::string mode = GetString(j, "mode", false, "stored_context");
  auto parsed = ParseZoneMode(mode);
  if (!parsed) {
    Invalid("mode", "must be static_links, stored_context or request_context");
  }
  z.mode = *parsed;
  if (Has(j, "relevance_threshold")) {
    const json& v = j.at("relevance_threshold");
    if (!v.is_number()) Invalid("relevance_threshold", "must be a number");
    z.relevance_threshold = v.get<double>();
  }
  z.disabled = GetBool(j, "disabled");
  return z;
}

Link LinkFromJson(const json& j) {
  RequireObject(j);
  Link l;
  l.zone_id = GetInt(j, "zone_id", true);
  l.target = TargetFromJson(j);
  l.disabled = GetBool(j, "disabled");
  return l;
}

TargetingRule RuleFromJson(const json& j) {
  RequireObject(j);
  TargetingRule r;
  r.id = GetInt(j, "id", false);
  r.owner = TargetFromJson(j);
  std::string dim = GetString(j, "dimension", true);
  auto parsed = ParseDimension(dim);
  if (!parsed) Invalid("dimension", "unknown dimension '" + dim + "'");
  r.dimension = *parsed;
  if (!Has(j, "values") || !j.at("values").is_array()) {
    Invalid("values", "must be an array of strings");
  }
  for (const json& v : j.at("values")) {
    if (!v.is_string()) Invalid("values", "must be an array of strings");
    r.values.push_back(v.get<std::string>());
  }
  r.disabled = GetBool(j, "disabled");
  return r;
}

// ---------------------------------------------------------------------------
// Invariant checks

void Inventory::CheckAdvertiser(const Advertiser& a) const {
  if (Trim(a.name).empty()) Invalid("name", "must not be empty");
}

void Inventory::CheckCampaign(const Campaign& c) const {
  if (Trim(c.name).empty()) Invalid("name", "must not be empty");
  if (!FindAdvertiser(c.advertiser_id)) Dangling("advertiser_id", c.advertiser_id);
  if (c.start_date && c.end_date && *c.end_date < *c.start_date) {
    Invalid("end_date", "must not be before start_date");
  }
}

void Inventory::CheckAd(const Ad& a) const {
  if (!FindCampaign(a.campaign_id)) Dangling("campaign_id", a.campaign_id);
  if (a.width <= 0) Invalid("width", "must be positive");
  if (a.height <= 0) Invalid("height", "must be positive");
  if (a.bid.micros < 0) Invalid("bid", "must not be negative");
  if (a.weight < 1) Invalid("weight", "must be a positive integer");
  if (Trim(a.landing_url).empty()) Invalid("landing_url", "must not be empty");
  if (a.landing_url.rfind("http://", 0) != 0 &&
      a.landing_url.rfind("https://", 0) != 0) {
    Invalid("landing_url", "must be an absolute http(s) URL");
  }
}

void Inventory::CheckWebsite(const Website& w) const {
  if (Trim(w.name).empty()) Invalid("name", "must not be empty");
}

void Inventory::CheckZone(const Zone& z) const {
  if (!FindWebsite(z.website_id)) Dangling("website_id", z.website_id);
  if (Trim(z.name).empty()) Invalid("name", "must not be empty");
  if (z.width <= 0) Invalid("width", "must be positive");
  if (z.height <= 0) Invalid("height", "must be positive");
  if (z.capacity < kMinZoneCapacity || z.capacity > kMaxZoneCapacity) {
    Invalid("capacity", "must be between 1 and 5");
  }
  if (z.relevance_threshold &&
      (*z.relevance_threshold < 0.0 || *z.relevance_threshold > 1.0)) {
    Invalid("relevance_threshold", "must be within [0, 1]");
  }
}

void Inventory::CheckTarget(const LinkTarget& t, const char* field) const {
  (void)field;
  if (t.kind == TargetKind::kCampaign) {
    if (!FindCampaign(t.id)) Dangling("campaign_id", t.id);
  } else {
    if (!FindAd(t.id)) Dangling("ad_id", t.id);
  }
}

void Inventory::CheckRule(const TargetingRule& r) const {
  CheckTarget(r.owner, "owner");
  if (r.values.empty()) Invalid("values", "must not be empty");
}

// ---------------------------------------------------------------------------
// Mutations

Id Inventory::AddAdvertiser(Advertiser a) {
  CheckAdvertiser(a);
  a.id = Allocate();
  Id id = a.id;
  advertisers_.emplace(id, std::move(a));
  return id;
}

Id Inventory::AddCampaign(Campaign c) {
  CheckCampaign(c);
  c.id = Allocate();
  Id id = c.id;
  campaigns_.emplace(id, std::move(c));
  return id;
}

Id Inventory::AddAd(Ad a) {
  CheckAd(a);
  a.id = Allocate();
  Id id = a.id;
  ads_.emplace(id, std::move(a));
  return id;
}

Id Inventory::AddWebsite(Website w) {
  CheckWebsite(w);
  w.id = Allocate();
  Id id = w.id;
  websites_.emplace(id, std::move(w));
  return id;
}

Id Inventory::AddZone(Zone z) {
  CheckZone(z);
  z.id = Allocate();
  Id id = z.id;
  zones_.emplace(id, std::move(z));
  return id;
}

Link Inventory::AddLink(Id zone_id, LinkTarget target) {
  if (!FindZone(zone_id)) Dangling("zone_id", zone_id);
  CheckTarget(target, "target");
  for (Link& l : links_) {
    if (l.zone_id == zone_id && l.target == target) {
      l.disabled = false;
      return l;
    }
  }
  links_.push_back(Link{zone_id, target, false});
  return links_.back();
}

void Inventory::DisableLink(Id zone_id, LinkTarget target) {
  for (Link& l : links_) {
    if (l.zone_id == zone_id && l.target == target) {
      l.disabled = true;
      return;
    }
  }
  throw InventoryError(Code::kNotFound, "", "no such link");
}

Id Inventory::SetRule(LinkTarget owner, Dimension dimension,
                      std::vector<std::string> values) {
  TargetingRule rule;
  rule.owner = owner;
  rule.dimension = dimension;
  for (const std::string& v : values) {
    auto canonical = CanonicalRuleValue(dimension, v);
    if (!canonical) {
      Invalid("values", "'" + v + "' is not a valid " +
                            std::string(DimensionName(dimension)) + " value");
    }
    if (std::find(rule.values.begin(), rule.values.end(), *canonical) ==
        rule.values.end()) {
      rule.values.push_back(std::move(*canonical));
    }
  }
  CheckRule(rule);
  for (auto& [id, existing] : rules_) {
    if (existing.owner == owner && existing.dimension == dimension) {
      rule.id = id;
      existing = std::move(rule);
      return id;
    }
  }
  rule.id = Allocate();
  Id id = rule.id;
  rules_.emplace(id, std::move(rule));
  return id;
}

Id Inventory::Register(EntityKind kind, const json& fields) {
  switch (kind) {
    case EntityKind::kAdvertiser: return AddAdvertiser(AdvertiserFromJson(fields));
    case EntityKind::kCampaign: return AddCampaign(CampaignFromJson(fields));
    case EntityKind::kAd: return AddAd(AdFromJson(fields));
    case EntityKind::kWebsite: return AddWebsite(WebsiteFromJson(fields));
    case EntityKind::kZone: return AddZone(ZoneFromJson(fields));
    case EntityKind::kTargeting: {
      TargetingRule r = RuleFromJson(fields);
      return SetRule(r.owner, r.dimension, std::move(r.values));
    }
    case EntityKind::kLink:
      break;
  }
  throw InventoryError(Code::kUnknownKind, "kind",
                       "entity kind '" + std::string(EntityKindName(kind)) +
                           "' cannot be registered by field map");
}

namespace {

template <typename T>
void Replace(std::map<Id, T>& table, Id id, T value) {
  auto it = table.find(id);
  if (it == table.end()) {
    throw InventoryError(Code::kNotFound, "id",
                         "no entity with id " + std::to_string(id));
  }
  value.id = id;
  it->second = std::move(value);
}

template <typename T>
void RequireKnown(const std::map<Id, T>& table, Id id) {
  if (!table.count(id)) {
    throw InventoryError(Code::kNotFound, "id",
                         "no entity with id " + std::to_string(id));
  }
}

}  // namespace

void Inventory::Update(EntityKind kind, Id id, const json& fields) {
  switch (kind) {
    case EntityKind::kAdvertiser: {
      RequireKnown(advertisers_, id);
      Advertiser a = AdvertiserFromJson(fields);
      CheckAdvertiser(a);
      Replace(advertisers_, id, std::move(a));
      return;
    }
    case EntityKind::kCampaign: {
      RequireKnown(campaigns_, id);
      Campaign c = CampaignFromJson(fields);
      CheckCampaign(c);
      Replace(campaigns_, id, std::move(c));
      return;
    }
    case EntityKind::kAd: {
      RequireKnown(ads_, id);
      Ad a = AdFromJson(fields);
      CheckAd(a);
      Replace(ads_, id, std::move(a));
      return;
    }
    case EntityKind::kWebsite: {
      RequireKnown(websites_, id);
      Website w = WebsiteFromJson(fields);
      CheckWebsite(w);
      Replace(websites_, id, std::move(w));
      return;
    }
    case EntityKind::kZone: {
      RequireKnown(zones_, id);
      Zone z = ZoneFromJson(fields);
      CheckZone(z);
      Replace(zones_, id, std::move(z));
      return;
    }
    case EntityKind::kTargeting: {
      RequireKnown(rules_, id);
      TargetingRule r = RuleFromJson(fields);
      const TargetingRule& old = rules_.at(id);
      if (r.owner != old.owner || r.dimension != old.dimension) {
        Invalid("dimension", "owner and dimension of a rule cannot change");
      }
      std::vector<std::string> canonical;
      for (const std::string& v : r.values) {
        auto c = CanonicalRuleValue(r.dimension, v);
        if (!c) Invalid("values", "'" + v + "' is not valid");
        canonical.push_back(*c);
      }
      r.values = std::move(canonical);
      CheckRule(r);
      Replace(rules_, id, std::move(r));
      return;
    }
    case EntityKind::kLink:
      break;
  }
  throw InventoryError(Code::kUnknownKind, "kind",
                       "links are updated through AddLink/DisableLink");
}

void Inventory::Apply(EntityKind kind, const json& entity) {
  switch (kind) {
    case EntityKind::kAdvertiser: {
      Advertiser a = AdvertiserFromJson(entity);
      Observe(a.id);
      advertisers_[a.id] = std::move(a);
      return;
    }
    case EntityKind::kCampaign: {
      Campaign c = CampaignFromJson(entity);
      Observe(c.id);
      campaigns_[c.id] = std::move(c);
      return;
    }
    case EntityKind::kAd: {
      Ad a = AdFromJson(entity);
      Observe(a.id);
      ads_[a.id] = std::move(a);
      return;
    }
    case EntityKind::kWebsite: {
      Website w = WebsiteFromJson(entity);
      Observe(w.id);
      websites_[w.id] = std::move(w);
      return;
    }
    case EntityKind::kZone: {
      Zone z = ZoneFromJson(entity);
      Observe(z.id);
      zones_[z.id] = std::move(z);
      return;
    }
    case EntityKind::kLink: {
      Link link = LinkFromJson(entity);
      for (Link& l : links_) {
        if (l.zone_id == link.zone_id && l.target == link.target) {
          l = link;
          return;
        }
      }
      links_.push_back(link);
      return;
    }
    case EntityKind::kTargeting: {
      TargetingRule r = RuleFromJson(entity);
      Observe(r.id);
      rules_[r.id] = std::move(r);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Queries

namespace {

template <typename T>
const T* Lookup(const std::map<Id, T>& table, Id id) {
  auto it = table.find(id);
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace

const Advertiser* Inventory::FindAdvertiser(Id id) const {
  return Lookup(advertisers_, id);
}
const Campaign* Inventory::FindCampaign(Id id) const {
  return Lookup(campaigns_, id);
}
const Ad* Inventory::FindAd(Id id) const { return Lookup(ads_, id); }
const Website* Inventory::FindWebsite(Id id) const {
  return Lookup(websites_, id);
}
const Zone* Inventory::FindZone(Id id) const { return Lookup(zones_, id); }
const TargetingRule* Inventory::FindRule(Id id) const {
  return Lookup(rules_, id);
}

std::vector<TargetingRule> Inventory::RulesFor(const Ad& ad) const {
  std::vector<TargetingRule> out;
  const LinkTarget as_ad{TargetKind::kAd, ad.id};
  const LinkTarget as_campaign{TargetKind::kCampaign, ad.campaign_id};
  for (const auto& [id, rule] : rules_) {
    if (rule.disabled) continue;
    if (rule.owner == as_ad || rule.owner == as_campaign) out.push_back(rule);
  }
  return out;
}

std::vector<Ad> Inventory::EligibleAds(Id zone_id, Instant instant,
                                       std::chrono::minutes offset) const {
  const Zone* zone = FindZone(zone_id);
  if (!zone) {
    throw InventoryError(Code::kNotFound, "zone_id",
                         "no zone with id " + std::to_string(zone_id));
  }
  std::vector<Ad> out;
  if (zone->disabled) return out;

  std::set<Id> reachable;
  for (const Link& link : links_) {
    if (link.zone_id != zone_id || link.disabled) continue;
    if (link.target.kind == TargetKind::kAd) {
      reachable.insert(link.target.id);
    } else {
      for (const auto& [id, ad] : ads_) {
        if (ad.campaign_id == link.target.id) reachable.insert(id);
      }
    }
  }

  for (Id id : reachable) {
    const Ad* ad = FindAd(id);
    if (!ad || ad->disabled) continue;
    const Campaign* campaign = FindCampaign(ad->campaign_id);
    if (!campaign || campaign->disabled) continue;
    const Advertiser* advertiser = FindAdvertiser(campaign->advertiser_id);
    if (!advertiser || advertiser->disabled) continue;
    if (!CampaignActiveAt(*campaign, instant, offset)) continue;
    if (!Fits(*ad, *zone)) continue;
    out.push_back(*ad);
  }
  return out;
}

json Inventory::EntityJson(EntityKind kind, Id id) const {
  auto missing = [&]() -> json {
    throw InventoryError(Code::kNotFound, "id",
                         "no " + std::string(EntityKindName(kind)) +
                             " with id " + std::to_string(id));
  };
  switch (kind) {
    case EntityKind::kAdvertiser:
      if (auto* p = FindAdvertiser(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kCampaign:
      if (auto* p = FindCampaign(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kAd:
      if (auto* p = FindAd(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kWebsite:
      if (auto* p = FindWebsite(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kZone:
      if (auto* p = FindZone(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kTargeting:
      if (auto* p = FindRule(id)) return adserve::ToJson(*p);
      return missing();
    case EntityKind::kLink:
      break;
  }
  return missing();
}

json Inventory::ToJson() const {
  json j = json::object();
  auto table = [](const auto& m) {
    json arr = json::array();
    for (const auto& [id, e] : m) arr.push_back(adserve::ToJson(e));
    return arr;
  };
  j["advertisers"] = table(advertisers_);
  j["campaigns"] = table(campaigns_);
  j["ads"] = table(ads_);
  j["websites"] = table(websites_);
  j["zones"] = table(zones_);
  j["targeting"] = table(rules_);
  json links = json::array();
  for (const Link& l : links_) links.push_back(adserve::ToJson(l));
  j["links"] = std::move(links);
  j["next_id"] = next_id_;
  return j;
}

Inventory Inventory::FromJson(const json& j) {
  RequireObject(j);
  Inventory inv;
  auto each = [&](const char* key, EntityKind kind) {
    if (!Has(j, key)) return;
    if (!j.at(key).is_array()) Invalid(key, "must be an array");
    for (const json& e : j.at(key)) inv.Apply(kind, e);
  };
  each("advertisers", EntityKind::kAdvertiser);
  each("campaigns", EntityKind::kCampaign);
  each("ads", EntityKind::kAd);
  each("websites", EntityKind::kWebsite);
  each("zones", EntityKind::kZone);
  each("targeting", EntityKind::kTargeting);
  each("links", EntityKind::kLink);
  Id next = GetInt(j, "next_id", false, 1);
  if (next > inv.next_id_) inv.next_id_ = next;
  return inv;
}

// ---------------------------------------------------------------------------
// InventoryStore

InventoryStore::InventoryStore(Inventory initial)
    : current_(std::make_shared<const Inventory>(std::move(initial))) {}

std::shared_ptr<const Inventory> InventoryStore::Snapshot() const {
  std::lock_guard<std::mutex> lock(ptr_mu_);
  return current_;
}

void InventoryStore::Publish(std::shared_ptr<const Inventory> next) {
  std::lock_guard<std::mutex> lock(ptr_mu_);
  current_ = std::move(next);
}

void InventoryStore::SetCommitHook(CommitHook hook) {
  std::lock_guard<std::mutex> writer(writer_mu_);
  hook_ = std::move(hook);
}

}  // namespace adserve
