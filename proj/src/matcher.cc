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

#include "adserve/matcher.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace adserve {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return Lower(a) == Lower(b);
}

int MinutesOfDay(std::string_view hhmm) {
  return ((hhmm[0] - '0') * 10 + (hhmm[1] - '0')) * 60 +
         (hhmm[3] - '0') * 10 + (hhmm[4] - '0');
}

bool DateMatches(const std::string& value, const Date& day) {
  auto sep = value.find("..");
  if (sep == std::string::npos) {
    auto d = ParseDate(value);
    return d && *d == day;
  }
  auto from = ParseDate(std::string_view(value).substr(0, sep));
  auto to = ParseDate(std::string_view(value).substr(sep + 2));
  return from && to && *from <= day && day <= *to;
}

bool TimeMatches(const std::string& value, int minute_of_day) {
  int from = MinutesOfDay(std::string_view(value).substr(0, 5));
  int to = MinutesOfDay(std::string_view(value).substr(6, 5));
  if (from < to) return from <= minute_of_day && minute_of_day < to;
  // Wraps past midnight, e.g. 22:00-06:00.
  return minute_of_day >= from || minute_of_day < to;
}

constexpr std::array<const char*, 7> kWeekdays = {"sun", "mon", "tue", "wed",
                                                  "thu", "fri", "sat"};

bool RuleMatches(const TargetingRule& rule, const RequestContext& ctx,
                 std::chrono::minutes offset) {
  const Instant local = ctx.instant + offset;
  auto any = [&](auto&& pred) {
    return std::any_of(rule.values.begin(), rule.values.end(), pred);
  };
  switch (rule.dimension) {
    case Dimension::kDate: {
      Date day = LocalDate(ctx.instant, offset);
      return any([&](const std::string& v) { return DateMatches(v, day); });
    }
    case Dimension::kDayOfWeek: {
      std::chrono::weekday wd{std::chrono::floor<std::chrono::days>(local)};
      std::string_view name = kWeekdays[wd.c_encoding()];
      return any([&](const std::string& v) { return v == name; });
    }
    case Dimension::kTimeOfDay: {
      auto since_midnight =
          local - std::chrono::floor<std::chrono::days>(local);
      int minute = static_cast<int>(
          std::chrono::duration_cast<std::chrono::minutes>(since_midnight)
              .count());
      return any([&](const std::string& v) { return TimeMatches(v, minute); });
    }
    case Dimension::kCountry:
      if (!ctx.country) return false;
      return any([&](const std::string& v) {
        return EqualsIgnoreCase(v, *ctx.country);
      });
    case Dimension::kCity:
      if (!ctx.city) return false;
      return any(
          [&](const std::string& v) { return EqualsIgnoreCase(v, *ctx.city); });
    case Dimension::kBrowser: {
      if (!ctx.browser) return false;
      std::string agent = Lower(*ctx.browser);
      return any([&](const std::string& v) {
        return agent.find(Lower(v)) != std::string::npos;
      });
    }
    case Dimension::kLanguage: {
      if (!ctx.language) return false;
      std::string lang = Lower(*ctx.language);
      return any([&](const std::string& v) {
        std::string want = Lower(v);
        return lang == want || lang.rfind(want + "-", 0) == 0;
      });
    }
    case Dimension::kSource:
      if (!ctx.source) return false;
      return any([&](const std::string& v) {
        return EqualsIgnoreCase(v, *ctx.source);
      });
  }
  return false;
}

}  // namespace

double Relevance(const TermVector& a, const TermVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto& x = a.entries();
  const auto& y = b.entries();
  double dot = 0.0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    int cmp = i->first.compare(j->first);
    if (cmp < 0) {
      ++i;
    } else if (cmp > 0) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  double cosine = dot / (a.norm() * b.norm());
  return std::clamp(cosine, 0.0, 1.0);
}

bool PassesTargeting(std::span<const TargetingRule> rules,
                     const RequestContext& ctx, std::chrono::minutes offset) {
  return std::all_of(rules.begin(), rules.end(), [&](const TargetingRule& r) {
    return r.disabled || RuleMatches(r, ctx, offset);
  });
}

Matcher::Matcher(const Lexicon& lexicon, MatcherConfig config)
    : lexicon_(lexicon), config_(config) {}

TermVector Matcher::ResolveContext(const Inventory& inventory,
                                   const Zone& zone,
                                   const RequestContext& ctx) const {
  switch (zone.mode) {
    case ZoneMode::kStaticLinks:
      return TermVector();
    case ZoneMode::kRequestContext:
      return ctx.context_text ? lexicon_.PageVector(*ctx.context_text)
                              : TermVector();
    case ZoneMode::kStoredContext: {
      if (zone.context_doc) return lexicon_.PageVector(*zone.context_doc);
      const Website* site = inventory.FindWebsite(zone.website_id);
      if (site && site->context_doc) {
        return lexicon_.PageVector(*site->context_doc);
      }
      return TermVector();
    }
  }
  return TermVector();
}

std::vector<Candidate> Matcher::RankAll(const Inventory& inventory,
                                        const RequestContext& ctx) const {
  const Zone* zone = inventory.FindZone(ctx.zone_id);
  if (!zone) {
    throw InventoryError(InventoryError::Code::kNotFound, "zone_id",
                         "no zone with id " + std::to_string(ctx.zone_id));
  }
  const TermVector context = ResolveContext(inventory, *zone, ctx);
  const double threshold =
      zone->relevance_threshold.value_or(config_.relevance_threshold);

  std::vector<Candidate> out;
  for (Ad& ad :
       inventory.EligibleAds(ctx.zone_id, ctx.instant, config_.billing_offset)) {
    auto rules = inventory.RulesFor(ad);
    if (!PassesTargeting(rules, ctx, config_.billing_offset)) continue;
    double rel = 0.0;
    if (!context.empty()) {
      rel = Relevance(context, lexicon_.AdVector(ad));
      if (rel < threshold) continue;
    }
    Money bid = ad.bid;
    out.push_back(Candidate{std::move(ad), rel, bid});
  }

  const bool weighted = config_.rank == RankMode::kWeighted && !context.empty();
  std::sort(out.begin(), out.end(),
            [weighted](const Candidate& a, const Candidate& b) {
              if (weighted) {
                double ka = static_cast<double>(a.bid.micros) * a.relevance;
                double kb = static_cast<double>(b.bid.micros) * b.relevance;
                if (ka != kb) return ka > kb;
              }
              if (a.bid != b.bid) return a.bid > b.bid;
              if (a.relevance != b.relevance) return a.relevance > b.relevance;
              return a.ad.id < b.ad.id;
            });
  return out;
}

std::vector<Candidate> Matcher::RankCandidates(
    const Inventory& inventory, const RequestContext& ctx) const {
  std::vector<Candidate> out = RankAll(inventory, ctx);
  const Zone* zone = inventory.FindZone(ctx.zone_id);
  if (out.size() > static_cast<size_t>(zone->capacity)) {
    out.resize(zone->capacity);
  }
  return out;
}

}  // namespace adserve
