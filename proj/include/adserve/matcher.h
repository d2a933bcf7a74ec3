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

#ifndef ADSERVE_MATCHER_H_
#define ADSERVE_MATCHER_H_

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adserve/inventory.h"
#include "adserve/lexicon.h"

namespace adserve {

struct RequestContext {
  Id zone_id = 0;
  Instant instant{};
  std::optional<std::string> source;
  std::optional<std::string> country;
  std::optional<std::string> city;
  // Full user-agent string; rules match it by substring.
  std::optional<std::string> browser;
  // Language tag such as "en" or "en-us".
  std::optional<std::string> language;
  // Page text for request_context zones.
  std::optional<std::string> context_text;
};

struct Candidate {
  Ad ad;
  double relevance = 0.0;
  Money bid;
};

enum class RankMode {
  kBid,       // bid descending; relevance only filters
  kWeighted,  // bid x relevance descending
};

inline constexpr double kDefaultRelevanceThreshold = 0.05;

struct MatcherConfig {
  double relevance_threshold = kDefaultRelevanceThreshold;
  RankMode rank = RankMode::kBid;
  // Offset applied to date, day and time rules and campaign dates.
  std::chrono::minutes billing_offset{0};
};

// Cosine similarity, clamped to [0, 1]; 0 when either side is empty.
double Relevance(const TermVector& a, const TermVector& b);

// Every rule must accept the context; a rule whose dimension is missing
// from the context rejects it. No rules accepts everything.
bool PassesTargeting(std::span<const TargetingRule> rules,
                     const RequestContext& ctx,
                     std::chrono::minutes offset = std::chrono::minutes(0));

class Matcher {
 public:
  explicit Matcher(const Lexicon& lexicon, MatcherConfig config = {});

  // Page vector the zone is matched against (empty for static_links).
  TermVector ResolveContext(const Inventory& inventory, const Zone& zone,
                            const RequestContext& ctx) const;

  // All qualifying candidates in serving order, not cut to capacity.
  // Throws InventoryError(kNotFound) for an unknown zone.
  std::vector<Candidate> RankAll(const Inventory& inventory,
                                 const RequestContext& ctx) const;

  // RankAll truncated to the zone's capacity.
  std::vector<Candidate> RankCandidates(const Inventory& inventory,
                                        const RequestContext& ctx) const;

  const MatcherConfig& config() const { return config_; }

 private:
  const Lexicon& lexicon_;
  MatcherConfig config_;
};

}  // namespace adserve

#endif  // ADSERVE_MATCHER_H_
