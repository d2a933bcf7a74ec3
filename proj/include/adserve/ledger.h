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

// Bucket logging. Every impression and click lands in a running total for
// its (ad, zone, UTC hour) bucket and is appended to the raw event stream.
// Buckets are a pure fold over the stream, so replaying the stream
// rebuilds them exactly.

#ifndef ADSERVE_LEDGER_H_
#define ADSERVE_LEDGER_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adserve/common.h"
#include "adserve/inventory.h"

namespace adserve {

enum class EventKind { kImpression, kClick };

struct DeliveryEvent {
  EventKind kind = EventKind::kImpression;
  Id ad_id = 0;
  Id zone_id = 0;
  Instant instant{};
  Money price;  // clicks only

  bool operator==(const DeliveryEvent&) const = default;
};

struct BucketKey {
  Id ad_id = 0;
  Id zone_id = 0;
  Instant hour{};

  auto operator<=>(const BucketKey&) const = default;
};

struct BucketRecord {
  Id ad_id = 0;
  Id zone_id = 0;
  Instant hour{};
  std::int64_t impressions = 0;
  std::int64_t clicks = 0;
  Money revenue;

  BucketKey key() const { return {ad_id, zone_id, hour}; }
  bool operator==(const BucketRecord&) const = default;
};

// Unset fields do not filter.
struct StatsScope {
  std::optional<Id> advertiser;
  std::optional<Id> campaign;
  std::optional<Id> ad;
  std::optional<Id> website;
  std::optional<Id> zone;

  bool operator==(const StatsScope&) const = default;
};

// Half-open [start, end).
struct TimeRange {
  Instant start{};
  Instant end{};
};

struct StatsReport {
  StatsScope scope;
  TimeRange range;
  std::int64_t impressions = 0;
  std::int64_t clicks = 0;
  double ctr = 0.0;
  Money revenue;
};

// One line of the raw event stream, without the trailing newline:
//   {"kind":"click","ad_id":7,"zone_id":2,"ts":"2013-03-01T10:00:00Z","price":0}
std::string EncodeEvent(const DeliveryEvent& event);
// Throws std::invalid_argument on anything but a well-formed event line.
DeliveryEvent DecodeEvent(std::string_view line);

// Destination for raw event lines. Implementations must be safe to call
// from one thread at a time; the ledger serializes calls.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void Append(std::string_view line) = 0;
};

class Ledger {
 public:
  // `sink` may be null (no raw stream); it must outlive the ledger.
  explicit Ledger(EventSink* sink = nullptr);

  // Safe to call from many threads at once. Returns the bucket's totals
  // right after this event was counted.
  BucketRecord LogEvent(const DeliveryEvent& event);

  // Replaces all buckets (recovery). Not safe concurrently with LogEvent.
  void Restore(std::span<const BucketRecord> buckets);

  // Copy of every bucket, ordered by (ad, zone, hour).
  std::vector<BucketRecord> Buckets() const;

  // Sums buckets whose hour lies in `range` and whose ad and zone fall in
  // `scope`, resolving ad -> campaign -> advertiser and zone -> website
  // through `inventory`. Throws std::invalid_argument if start > end.
  StatsReport QueryStats(const Inventory& inventory, const StatsScope& scope,
                         const TimeRange& range) const;

  // Events with a non-positive id or a negative price. They are still
  // counted; this only flags them.
  std::int64_t quarantined() const { return quarantined_.load(); }

  static std::vector<BucketRecord> Fold(std::span<const DeliveryEvent> events);

 private:
  static constexpr size_t kShards = 16;
  struct Shard {
    mutable std::mutex mu;
    std::map<BucketKey, BucketRecord> buckets;
  };
  Shard& ShardFor(const BucketKey& key);

  EventSink* sink_;
  std::mutex sink_mu_;
  std::array<Shard, kShards> shards_;
  std::atomic<std::int64_t> quarantined_{0};
};

}  // namespace adserve

#endif  // ADSERVE_LEDGER_H_
