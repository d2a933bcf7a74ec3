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

// Entity model for the ad server: advertisers own campaigns, campaigns own
// ads, websites own zones, and links attach campaigns or single ads to
// zones. Entities are never deleted; a `disabled` flag hides them.

#ifndef ADSERVE_INVENTORY_H_
#define ADSERVE_INVENTORY_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adserve/common.h"
#include "adserve/timeutil.h"
#include "json.hpp"

namespace adserve {

enum class EntityKind {
  kAdvertiser,
  kCampaign,
  kAd,
  kWebsite,
  kZone,
  kLink,
  kTargeting,
};

std::string_view EntityKindName(EntityKind kind);
std::optional<EntityKind> ParseEntityKind(std::string_view name);

struct Advertiser {
  Id id = 0;
  std::string name;
  std::string contact;
  std::string email;
  bool disabled = false;

  bool operator==(const Advertiser&) const = default;
};

// Contract is the only campaign type.
enum class CampaignKind { kContract };

struct Campaign {
  Id id = 0;
  Id advertiser_id = 0;
  std::string name;
  CampaignKind kind = CampaignKind::kContract;
  std::optional<Date> start_date;
  std::optional<Date> end_date;
  bool disabled = false;

  bool operator==(const Campaign&) const = default;
};

struct Ad {
  Id id = 0;
  Id campaign_id = 0;
  std::string title;
  std::string description;
  std::string display_url;
  std::string landing_url;
  std::string creative_ref;
  int width = 0;
  int height = 0;
  std::set<std::string> keywords;
  Money bid;
  int weight = 1;
  bool disabled = false;

  bool operator==(const Ad&) const = default;
};

struct Website {
  Id id = 0;
  std::string name;
  std::string url;
  std::optional<std::string> context_doc;
  bool disabled = false;

  bool operator==(const Website&) const = default;
};

// How a zone obtains the page content it is matched against.
enum class ZoneMode {
  kStaticLinks,     // no content; linked ads are served by bid order
  kStoredContext,   // zone.context_doc, else website.context_doc
  kRequestContext,  // text supplied with each ad request
};

std::string_view ZoneModeName(ZoneMode mode);
std::optional<ZoneMode> ParseZoneMode(std::string_view name);

inline constexpr int kMinZoneCapacity = 1;
inline constexpr int kMaxZoneCapacity = 5;

struct Zone {
  Id id = 0;
  Id website_id = 0;
  std::string name;
  std::string description;
  int width = 0;
  int height = 0;
  int capacity = 3;
  std::optional<std::string> source_label;
  std::optional<std::string> context_doc;
  ZoneMode mode = ZoneMode::kStoredContext;
  // Overrides the server-wide relevance threshold for this zone.
  std::optional<double> relevance_threshold;
  bool disabled = false;

  bool operator==(const Zone&) const = default;
};

enum class TargetKind { kCampaign, kAd };

struct LinkTarget {
  TargetKind kind = TargetKind::kCampaign;
  Id id = 0;

  auto operator<=>(const LinkTarget&) const = default;
};

struct Link {
  Id zone_id = 0;
  LinkTarget target;
  bool disabled = false;

  bool operator==(const Link&) const = default;
};

enum class Dimension {
  kDate,
  kDayOfWeek,
  kTimeOfDay,
  kCountry,
  kCity,
  kBrowser,
  kLanguage,
  kSource,
};

std::string_view DimensionName(Dimension d);
std::optional<Dimension> ParseDimension(std::string_view name);

// At most one rule exists per (owner, dimension); setting a rule again
// replaces its values. Value syntax depends on the dimension:
//   date         YYYY-MM-DD or YYYY-MM-DD..YYYY-MM-DD (inclusive)
//   day_of_week  mon tue wed thu fri sat sun (full names accepted)
//   time_of_day  HH:MM-HH:MM, end exclusive, wraps past midnight
//   others       literal strings
struct TargetingRule {
  Id id = 0;
  LinkTarget owner;
  Dimension dimension = Dimension::kCountry;
  std::vector<std::string> values;
  bool disabled = false;

  bool operator==(const TargetingRule&) const = default;
};

// Returns the canonical form of `value` for `dimension`, or nullopt if the
// value is not valid for it.
std::optional<std::string> CanonicalRuleValue(Dimension dimension,
                                              std::string_view value);

class InventoryError : public std::runtime_error {
 public:
  enum class Code {
    kUnknownKind,
    kInvariant,
    kDanglingReference,
    kNotFound,
  };

  InventoryError(Code code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  Code code() const { return code_; }
  // Offending field name; empty when the error is not field-specific.
  const std::string& field() const { return field_; }

 private:
  Code code_;
  std::string field_;
};

// True iff `instant` falls on or between the campaign's start and end
// dates, both inclusive, with day boundaries at midnight of the given
// offset from UTC.
bool CampaignActiveAt(const Campaign& campaign, Instant instant,
                      std::chrono::minutes offset = std::chrono::minutes(0));

// Whole inventory state. A plain value: copy it, mutate the copy, publish.
class Inventory {
 public:
  // Field-map registration; `fields` must not carry an id. Returns the new
  // id. Throws InventoryError.
  Id Register(EntityKind kind, const nlohmann::json& fields);

  // Full replacement of an existing entity. Throws InventoryError.
  void Update(EntityKind kind, Id id, const nlohmann::json& fields);

  Id AddAdvertiser(Advertiser a);
  Id AddCampaign(Campaign c);
  Id AddAd(Ad a);
  Id AddWebsite(Website w);
  Id AddZone(Zone z);

  // Idempotent: an existing (zone, target) link is returned as-is, except
  // that a disabled one is re-enabled.
  Link AddLink(Id zone_id, LinkTarget target);
  void DisableLink(Id zone_id, LinkTarget target);

  // Creates or replaces the rule for (owner, dimension). Returns its id.
  Id SetRule(LinkTarget owner, Dimension dimension,
             std::vector<std::string> values);

  // Inserts or overwrites an entity carrying its own id. Used to replay
  // journaled mutations; keeps the id counter ahead of every seen id.
  void Apply(EntityKind kind, const nlohmann::json& entity);

  const Advertiser* FindAdvertiser(Id id) const;
  const Campaign* FindCampaign(Id id) const;
  const Ad* FindAd(Id id) const;
  const Website* FindWebsite(Id id) const;
  const Zone* FindZone(Id id) const;
  const TargetingRule* FindRule(Id id) const;

  const std::map<Id, Advertiser>& advertisers() const { return advertisers_; }
  const std::map<Id, Campaign>& campaigns() const { return campaigns_; }
  const std::map<Id, Ad>& ads() const { return ads_; }
  const std::map<Id, Website>& websites() const { return websites_; }
  const std::map<Id, Zone>& zones() const { return zones_; }
  const std::vector<Link>& links() const { return links_; }
  const std::map<Id, TargetingRule>& rules() const { return rules_; }
  Id next_id() const { return next_id_; }

  // Active rules attached to the ad itself and to its campaign.
  std::vector<TargetingRule> RulesFor(const Ad& ad) const;

  // Ads linked to the zone (directly or through a campaign) whose
  // campaign is active at `instant` and that fit inside the zone, by id.
  // Throws InventoryError(kNotFound) for an unknown zone.
  std::vector<Ad> EligibleAds(
      Id zone_id, Instant instant,
      std::chrono::minutes offset = std::chrono::minutes(0)) const;

  // Canonical JSON of one entity / the whole state, and back.
  nlohmann::json EntityJson(EntityKind kind, Id id) const;
  nlohmann::json ToJson() const;
  static Inventory FromJson(const nlohmann::json& j);

  bool operator==(const Inventory&) const = default;

 private:
  Id Allocate() { return next_id_++; }
  void Observe(Id id) {
    if (id >= next_id_) next_id_ = id + 1;
  }
  void CheckAdvertiser(const Advertiser& a) const;
  void CheckCampaign(const Campaign& c) const;
  void CheckAd(const Ad& a) const;
  void CheckWebsite(const Website& w) const;
  void CheckZone(const Zone& z) const;
  void CheckTarget(const LinkTarget& t, const char* field) const;
  void CheckRule(const TargetingRule& r) const;

  std::map<Id, Advertiser> advertisers_;
  std::map<Id, Campaign> campaigns_;
  std::map<Id, Ad> ads_;
  std::map<Id, Website> websites_;
  std::map<Id, Zone> zones_;
  std::vector<Link> links_;
  std::map<Id, TargetingRule> rules_;
  Id next_id_ = 1;
};

// JSON codecs with field-level validation errors (InventoryError with
// Code::kInvariant naming the field).
nlohmann::json ToJson(const Advertiser& a);
nlohmann::json ToJson(const Campaign& c);
nlohmann::json ToJson(const Ad& a);
nlohmann::json ToJson(const Website& w);
nlohmann::json ToJson(const Zone& z);
nlohmann::json ToJson(const Link& l);
nlohmann::json ToJson(const TargetingRule& r);

Advertiser AdvertiserFromJson(const nlohmann::json& j);
Campaign CampaignFromJson(const nlohmann::json& j);
Ad AdFromJson(const nlohmann::json& j);
Website WebsiteFromJson(const nlohmann::json& j);
Zone ZoneFromJson(const nlohmann::json& j);
Link LinkFromJson(const nlohmann::json& j);
TargetingRule RuleFromJson(const nlohmann::json& j);

// One committed mutation: the kind and the entity's full post-state.
struct InventoryChange {
  EntityKind kind;
  nlohmann::json entity;
};

// Single-writer holder. Readers take immutable snapshots without blocking
// the writer; mutations are serialized and published atomically.
class InventoryStore {
 public:
  using CommitHook = std::function<void(const Inventory& next,
                                        const std::vector<InventoryChange>&)>;

  explicit InventoryStore(Inventory initial = {});

  std::shared_ptr<const Inventory> Snapshot() const;

  // Runs `fn` against a private copy of the current state. `fn` returns
  // the changes it made; if it throws, nothing is published. The commit
  // hook (persistence) runs before publication.
  template <typename Fn>
  auto Mutate(Fn&& fn) {
    std::lock_guard<std::mutex> writer(writer_mu_);
    auto next = std::make_shared<Inventory>(*Snapshot());
    std::vector<InventoryChange> changes;
    auto result = fn(*next, changes);
    if (hook_ && !changes.empty()) hook_(*next, changes);
    Publish(std::move(next));
    return result;
  }

  void SetCommitHook(CommitHook hook);

 private:
  void Publish(std::shared_ptr<const Inventory> next);

  mutable std::mutex ptr_mu_;
  std::shared_ptr<const Inventory> current_;
  std::mutex writer_mu_;
  CommitHook hook_;
};

}  // namespace adserve

#endif  // ADSERVE_INVENTORY_H_
