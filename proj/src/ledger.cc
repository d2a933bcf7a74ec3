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

#include "adserve/ledger.h"

#include <functional>
#include <stdexcept>

#include "adserve/timeutil.h"
#include "json.hpp"

namespace adserve {

namespace {

bool Malformed(const DeliveryEvent& e) {
  return e.ad_id <= 0 || e.zone_id <= 0 || e.price.micros < 0;
}

void Accumulate(BucketRecord& bucket, const DeliveryEvent& event) {
  if (event.kind == EventKind::kImpression) {
    ++bucket.impressions;
  } else {
    ++bucket.clicks;
    bucket.revenue += event.price;
  }
}

bool InScope(const Inventory& inventory, const StatsScope& scope, Id ad_id,
             Id zone_id) {
  if (scope.ad && *scope.ad != ad_id) return false;
  if (scope.zone && *scope.zone != zone_id) return false;
  if (scope.campaign || scope.advertiser) {
    const Ad* ad = inventory.FindAd(ad_id);
    if (!ad) return false;
    if (scope.campaign && *scope.campaign != ad->campaign_id) return false;
    if (scope.advertiser) {
      const Campaign* campaign = inventory.FindCampaign(ad->campaign_id);
      if (!campaign || campaign->advertiser_id != *scope.advertiser) {
        return false;
      }
    }
  }
  if (scope.website) {
    const Zone* zone = inventory.FindZone(zone_id);
    if (!zone || zone->website_id != *scope.website) return false;
  }
  return true;
}

}  // namespace

std::string EncodeEvent(const DeliveryEvent& event) {
  std::string line = "{\"kind\":\"";
  line += event.kind == EventKind::kImpression ? "impression" : "click";
  line += "\",\"ad_id\":" + std::to_string(event.ad_id);
  line += ",\"zone_id\":" + std::to_string(event.zone_id);
  line += ",\"ts\":\"" + FormatInstant(event.instant) + "\"";
  line += ",\"price\":" + std::to_string(event.price.micros) + "}";
  return line;
}

DeliveryEvent DecodeEvent(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument("not a JSON object");
  }
  auto field = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end()) {
      throw std::invalid_argument(std::string("missing field '") + key + "'");
    }
    return *it;
  };
  DeliveryEvent e;
  const auto& kind = field("kind");
  if (kind == "impression") {
    e.kind = EventKind::kImpression;
  } else if (kind == "click") {
    e.kind = EventKind::kClick;
  } else {
    throw std::invalid_argument("unknown event kind");
  }
  const auto& ad = field("ad_id");
  const auto& zone = field("zone_id");
  const auto& price = field("price");
  const auto& ts = field("ts");
  if (!ad.is_number_integer() || !zone.is_number_integer() ||
      !price.is_number_integer() || !ts.is_string()) {
    throw std::invalid_argument("wrong field type");
  }
  e.ad_id = ad.get<Id>();
  e.zone_id = zone.get<Id>();
  e.price = Money(price.get<std::int64_t>());
  auto instant = ParseInstant(ts.get<std::string>());
  if (!instant) throw std::invalid_argument("bad timestamp");
  e.instant = *instant;
  return e;
}

Ledger::Ledger(EventSink* sink) : sink_(sink) {}

Ledger::Shard& Ledger::ShardFor(const BucketKey& key) {
  size_t h = std::hash<Id>()(key.ad_id) * 31 + std::hash<Id>()(key.zone_id);
  h = h * 31 + std::hash<std::int64_t>()(key.hour.time_since_epoch().count());
  return shards_[h % kShards];
}

BucketRecord Ledger::LogEvent(const DeliveryEvent& event) {
  if (Malformed(event)) quarantined_.fetch_add(1);
  if (sink_) {
    std::string line = EncodeEvent(event);
    std::lock_guard<std::mutex> lock(sink_mu_);
    sink_->Append(line);
  }
  BucketKey key{event.ad_id, event.zone_id, TruncateToHour(event.instant)};
  Shard& shard = ShardFor(key);
  std::lock_guard<std::mutex> lock(shard.mu);
  auto [it, inserted] = shard.buckets.try_emplace(
      key, BucketRecord{key.ad_id, key.zone_id, key.hour, 0, 0, Money()});
  Accumulate(it->second, event);
  return it->second;
}

void Ledger::Restore(std::span<const BucketRecord> buckets) {
  for (Shard& shard : shards_) {
    std::lock_guard<std::mutex> lock(shard.mu);
    shard.buckets.clear();
  }
  for (const BucketRecord& b : buckets) {
    Shard& shard = ShardFor(b.key());
    std::lock_guard<std::mutex> lock(shard.mu);
    shard.buckets[b.key()] = b;
  }
}

std::vector<BucketRecord> Ledger::Buckets() const {
  std::map<BucketKey, BucketRecord> all;
  for (const Shard& shard : shards_) {
    std::lock_guard<std::mutex> lock(shard.mu);
    all.insert(shard.buckets.begin(), shard.buckets.end());
  }
  std::vector<BucketRecord> out;
  out.reserve(all.size());
  for (auto& [key, b] : all) out.push_back(b);
  return out;
}

StatsReport Ledger::QueryStats(const Inventory& inventory,
                               const StatsScope& scope,
                               const TimeRange& range) const {
  if (range.start > range.end) {
    throw std::invalid_argument("range start must not be after its end");
  }
  StatsReport report;
  report.scope = scope;
  report.range = range;
  for (const Shard& shard : shards_) {
    std::lock_guard<std::mutex> lock(shard.mu);
    for (const auto& [key, b] : shard.buckets) {
      if (key.hour < range.start || key.hour >= range.end) continue;
      if (!InScope(inventory, scope, key.ad_id, key.zone_id)) continue;
      report.impressions += b.impressions;
      report.clicks += b.clicks;
      report.revenue += b.revenue;
    }
  }
  report.ctr = report.impressions > 0
                   ? static_cast<double>(report.clicks) /
                         static_cast<double>(report.impressions)
                   : 0.0;
  return report;
}

std::vector<BucketRecord> Ledger::Fold(std::span<const DeliveryEvent> events) {
  std::map<BucketKey, BucketRecord> buckets;
  for (const DeliveryEvent& e : events) {
    BucketKey key{e.ad_id, e.zone_id, TruncateToHour(e.instant)};
    auto [it, inserted] = buckets.try_emplace(
        key, BucketRecord{key.ad_id, key.zone_id, key.hour, 0, 0, Money()});
    Accumulate(it->second, e);
  }
  std::vector<BucketRecord> out;
  out.reserve(buckets.size());
  for (auto& [key, b] : buckets) out.push_back(b);
  return out;
}

}  // namespace adserve
