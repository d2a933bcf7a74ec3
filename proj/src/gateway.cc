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

#include "adserve/gateway.h"

#include <charconv>
#include <iostream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "adserve/auction.h"
#include "adserve/lexicon.h"
#include "adserve/timeutil.h"
#include "adserve/vault.h"
#include "httplib.h"
#include "json.hpp"

namespace adserve {

using nlohmann::json;

namespace {

constexpr char kJsonType[] = "application/json";
constexpr char kHtmlType[] = "text/html; charset=utf-8";

std::optional<Id> ParseId(std::string_view s) {
  Id v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v <= 0) {
    return std::nullopt;
  }
  return v;
}

std::string HtmlEscape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string UrlEncode(std::string_view s) {
  static const char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

std::string StripTrailingSlash(std::string_view s) {
  while (!s.empty() && s.back() == '/') s.remove_suffix(1);
  return std::string(s);
}

// "en-US,en;q=0.9" -> "en-us".
std::optional<std::string> PrimaryLanguage(std::string_view header) {
  std::string_view first = header.substr(0, header.find_first_of(",;"));
  while (!first.empty() && first.front() == ' ') first.remove_prefix(1);
  while (!first.empty() && first.back() == ' ') first.remove_suffix(1);
  if (first.empty() || first == "*") return std::nullopt;
  std::string out(first);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<std::string> Param(const httplib::Request& req,
                                 const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void SendError(httplib::Response& res, int status, std::string_view message,
               std::string_view field = {}) {
  json body = {{"error", message}};
  if (!field.empty()) body["field"] = field;
  SendJson(res, status, body);
}

int StatusFor(const InventoryError& e) {
  switch (e.code()) {
    case InventoryError::Code::kNotFound: return 404;
    case InventoryError::Code::kUnknownKind: return 400;
    case InventoryError::Code::kInvariant:
    case InventoryError::Code::kDanglingReference: return 422;
  }
  return 500;
}

std::optional<EntityKind> KindForResource(std::string_view resource) {
  if (resource == "advertisers") return EntityKind::kAdvertiser;
  if (resource == "campaigns") return EntityKind::kCampaign;
  if (resource == "ads") return EntityKind::kAd;
  if (resource == "websites") return EntityKind::kWebsite;
  if (resource == "zones") return EntityKind::kZone;
  if (resource == "targeting") return EntityKind::kTargeting;
  if (resource == "links") return EntityKind::kLink;
  return std::nullopt;
}

json ListJson(const Inventory& inv, EntityKind kind) {
  json arr = json::array();
  auto all = [&](const auto& table) {
    for (const auto& [id, e] : table) arr.push_back(ToJson(e));
  };
  switch (kind) {
    case EntityKind::kAdvertiser: all(inv.advertisers()); break;
    case EntityKind::kCampaign: all(inv.campaigns()); break;
    case EntityKind::kAd: all(inv.ads()); break;
    case EntityKind::kWebsite: all(inv.websites()); break;
    case EntityKind::kZone: all(inv.zones()); break;
    case EntityKind::kTargeting: all(inv.rules()); break;
    case EntityKind::kLink:
      for (const Link& l : inv.links()) arr.push_back(ToJson(l));
      break;
  }
  return arr;
}

json ScopeJson(const StatsScope& s) {
  auto opt = [](const std::optional<Id>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"advertiser", opt(s.advertiser)},
          {"campaign", opt(s.campaign)},
          {"ad", opt(s.ad)},
          {"website", opt(s.website)},
          {"zone", opt(s.zone)}};
}

json ReportJson(const StatsReport& r) {
  return {{"scope", ScopeJson(r.scope)},
          {"from", FormatInstant(r.range.start)},
          {"to", FormatInstant(r.range.end)},
          {"impressions", r.impressions},
          {"clicks", r.clicks},
          {"ctr", r.ctr},
          {"revenue", r.revenue.micros}};
}

std::string AdMarkup(const Ad& ad, const std::string& click_url) {
  std::string out = "<a href=\"" + HtmlEscape(click_url) +
                    "\" target=\"_top\" rel=\"nofollow\" title=\"" +
                    HtmlEscape(ad.title) + "\">";
  if (ad.creative_ref.empty()) {
    out += "<strong>" + HtmlEscape(ad.title) + "</strong> " +
           HtmlEscape(ad.description) + " <cite>" +
           HtmlEscape(ad.display_url) + "</cite>";
  } else if (ad.creative_ref.front() == '<') {
    out += ad.creative_ref;
  } else {
    out += "<img src=\"" + HtmlEscape(ad.creative_ref) + "\" width=\"" +
           std::to_string(ad.width) + "\" height=\"" +
           std::to_string(ad.height) + "\" alt=\"" + HtmlEscape(ad.title) +
           "\" border=\"0\">";
  }
  out += "</a>";
  return out;
}

}  // namespace

std::string InvocationTag(const Zone& zone, std::string_view base_url) {
  std::string src =
      StripTrailingSlash(base_url) + "/ad?zoneid=" + std::to_string(zone.id);
  if (zone.source_label && !zone.source_label->empty()) {
    src += "&source=" + UrlEncode(*zone.source_label);
  }
  return "<iframe src=\"" + src + "\" width=\"" + std::to_string(zone.width) +
         "\" height=\"" + std::to_string(zone.height) +
         "\" frameborder=\"0\" scrolling=\"no\"></iframe>";
}

// ---------------------------------------------------------------------------

struct Gateway::Impl {
  explicit Impl(GatewayConfig c);

  Instant Now() const { return config.clock(); }
  std::string BaseUrl(const httplib::Request& req) const;
  bool Authorized(const httplib::Request& req) const;

  void ServeAd(const httplib::Request& req, httplib::Response& res);
  void Click(const httplib::Request& req, httplib::Response& res);
  void List(EntityKind kind, const httplib::Request& req,
            httplib::Response& res);
  void Get(EntityKind kind, Id id, httplib::Response& res);
  void Create(EntityKind kind, const httplib::Request& req,
              httplib::Response& res);
  void Replace(EntityKind kind, Id id, const httplib::Request& req,
               httplib::Response& res);
  void CreateLink(const httplib::Request& req, httplib::Response& res);
  void SetLinkState(const httplib::Request& req, httplib::Response& res);
  void Stats(const httplib::Request& req, httplib::Response& res);
  void Tag(const httplib::Request& req, httplib::Response& res);

  void Remember(Id ad, Id zone, Money price, Instant now);
  Money RecallPrice(Id ad, Id zone, Instant now);

  void Route();

  GatewayConfig config;
  Lexicon lexicon;
  Matcher matcher;
  std::unique_ptr<Vault> vault;
  InventoryStore store;
  std::unique_ptr<Ledger> ledger;

  std::mutex decisions_mu;
  struct Decision {
    Money price;
    Instant expires;
  };
  std::map<std::pair<Id, Id>, Decision> decisions;

  httplib::Server server;
  std::thread thread;
};

namespace {

Lexicon MakeLexicon(const GatewayConfig& c) {
  Stopwords stopwords = c.stopwords_file ? Stopwords::Load(*c.stopwords_file)
                                         : Stopwords::Default();
  std::optional<Corpus> corpus;
  if (c.corpus_file) corpus = Corpus::Load(*c.corpus_file);
  return Lexicon(std::move(stopwords), std::move(corpus));
}

GatewayConfig WithDefaults(GatewayConfig c) {
  if (!c.clock) {
    c.clock = [] {
      return std::chrono::floor<std::chrono::seconds>(
          std::chrono::system_clock::now());
    };
  }
  return c;
}

}  // namespace

Gateway::Impl::Impl(GatewayConfig c)
    : config(WithDefaults(std::move(c))),
      lexicon(MakeLexicon(config)),
      matcher(lexicon, config.matcher) {
  if (config.reserve.micros < 0) {
    throw std::invalid_argument("reserve price must not be negative");
  }
  if (!config.data_dir.empty()) {
    vault = std::make_unique<Vault>(config.data_dir);
    Recovered rec = vault->Recover();
    if (!rec.from_snapshot && rec.admin_records > 0) {
      SaveSnapshot(Snapshot{kSnapshotVersion, rec.inventory, Now()},
                   vault->snapshot_path());
    }
    store.Mutate([&](Inventory& inv, std::vector<InventoryChange>&) {
      inv = std::move(rec.inventory);
      return 0;
    });
    ledger = std::make_unique<Ledger>(&vault->events());
    ledger->Restore(rec.buckets);
    store.SetCommitHook([this](const Inventory& next,
                               const std::vector<InventoryChange>& changes) {
      vault->Persist(next, changes, Now());
    });
  } else {
    ledger = std::make_unique<Ledger>();
  }
  Route();
}

std::string Gateway::Impl::BaseUrl(const httplib::Request& req) const {
  if (!config.public_url.empty()) return StripTrailingSlash(config.public_url);
  std::string host = req.get_header_value("Host");
  if (host.empty()) {
    host = config.host + ":" + std::to_string(config.port);
  }
  return "http://" + host;
}

bool Gateway::Impl::Authorized(const httplib::Request& req) const {
  if (config.admin_token.empty()) return false;
  std::string token = req.get_header_value(std::string(kAdminTokenHeader));
  if (token.empty()) {
    std::string auth = req.get_header_value("Authorization");
    if (auth.rfind("Bearer ", 0) == 0) token = auth.substr(7);
  }
  return token == config.admin_token;
}

void Gateway::Impl::Remember(Id ad, Id zone, Money price, Instant now) {
  std::lock_guard<std::mutex> lock(decisions_mu);
  if (decisions.size() > 100000) {
    std::erase_if(decisions,
                  [now](const auto& kv) { return kv.second.expires <= now; });
  }
  decisions[{ad, zone}] = Decision{price, now + config.decision_ttl};
}

Money Gateway::Impl::RecallPrice(Id ad, Id zone, Instant now) {
  std::lock_guard<std::mutex> lock(decisions_mu);
  auto it = decisions.find({ad, zone});
  if (it == decisions.end() || it->second.expires <= now) return Money();
  return it->second.price;
}

void Gateway::Impl::ServeAd(const httplib::Request& req,
                            httplib::Response& res) {
  auto zone_param = Param(req, "zoneid");
  if (!zone_param) return SendError(res, 400, "zoneid is required");
  auto zone_id = ParseId(*zone_param);
  if (!zone_id) return SendError(res, 400, "zoneid must be a positive integer");
  std::string format = Param(req, "format").value_or("html");
  if (format != "html" && format != "json") {
    return SendError(res, 400, "format must be html or json");
  }

  auto inventory = store.Snapshot();
  const Zone* zone = inventory->FindZone(*zone_id);
  if (!zone || zone->disabled) {
    res.status = 404;
    res.set_content("zone not found", "text/plain");
    return;
  }

  RequestContext ctx;
  ctx.zone_id = *zone_id;
  ctx.instant = Now();
  ctx.source = Param(req, "source");
  ctx.country = Param(req, "country");
  ctx.city = Param(req, "city");
  ctx.context_text = Param(req, "context");
  ctx.browser = Param(req, "browser");
  if (!ctx.browser && req.has_header("User-Agent")) {
    ctx.browser = req.get_header_value("User-Agent");
  }
  if (auto lang = Param(req, "language")) {
    ctx.language = PrimaryLanguage(*lang);
  } else if (req.has_header("Accept-Language")) {
    ctx.language = PrimaryLanguage(req.get_header_value("Accept-Language"));
  }

  std::vector<Candidate> ranked = matcher.RankAll(*inventory, ctx);
  const size_t slots = static_cast<size_t>(zone->capacity);
  const bool weighted = config.matcher.rank == RankMode::kWeighted &&
                        !ranked.empty() && ranked.front().relevance > 0.0;
  std::vector<SlotAssignment> winners =
      weighted ? WeightedGspAssign(ranked, slots, config.reserve)
               : GspAssign(ranked, slots, config.reserve);

  std::map<Id, const Ad*> by_id;
  for (const Candidate& c : ranked) by_id[c.ad.id] = &c.ad;

  const std::string base = BaseUrl(req);
  json payloads = json::array();
  std::string html;
  for (const SlotAssignment& win : winners) {
    const Ad& ad = *by_id.at(win.ad_id);
    std::string click_url = base + "/click?adid=" + std::to_string(ad.id) +
                            "&zoneid=" + std::to_string(zone->id);
    ledger->LogEvent({EventKind::kImpression, ad.id, zone->id, ctx.instant,
                      Money()});
    Remember(ad.id, zone->id, win.price, ctx.instant);
    if (format == "json") {
      payloads.push_back({{"ad_id", ad.id},
                          {"title", ad.title},
                          {"description", ad.description},
                          {"display_url", ad.display_url},
                          {"click_url", click_url},
                          {"creative_ref", ad.creative_ref},
                          {"width", ad.width},
                          {"height", ad.height},
                          {"slot_index", win.slot_index}});
    } else {
      html += AdMarkup(ad, click_url) + "\n";
    }
  }

  res.status = 200;
  res.set_header("Cache-Control", "no-store");
  if (format == "json") {
    res.set_content(payloads.dump(), kJsonType);
  } else if (winners.empty()) {
    res.set_content(std::string(kNoAdHtml), kHtmlType);
  } else {
    std::string doc =
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"></head>"
        "<body style=\"margin:0;width:" +
        std::to_string(zone->width) + "px;height:" +
        std::to_string(zone->height) + "px;overflow:hidden\">\n" + html +
        "</body></html>\n";
    res.set_content(doc, kHtmlType);
  }
}

void Gateway::Impl::Click(const httplib::Request& req,
                          httplib::Response& res) {
  auto ad_param = Param(req, "adid");
  auto zone_param = Param(req, "zoneid");
  if (!ad_param || !zone_param) {
    return SendError(res, 400, "adid and zoneid are required");
  }
  auto ad_id = ParseId(*ad_param);
  auto zone_id = ParseId(*zone_param);
  if (!ad_id || !zone_id) {
    return SendError(res, 400, "adid and zoneid must be positive integers");
  }
  auto inventory = store.Snapshot();
  const Ad* ad = inventory->FindAd(*ad_id);
  const Zone* zone = inventory->FindZone(*zone_id);
  if (!ad || !zone) {
    res.status = 404;
    res.set_content("not found", "text/plain");
    return;
  }
  Instant now = Now();
  ledger->LogEvent({EventKind::kClick, ad->id, zone->id, now,
                    RecallPrice(ad->id, zone->id, now)});
  res.set_redirect(ad->landing_url, 302);
}

void Gateway::Impl::List(EntityKind kind, const httplib::Request& req,
                         httplib::Response& res) {
  auto inventory = store.Snapshot();
  json all = ListJson(*inventory, kind);
  // Optional equality filters on any integer field, e.g. ?zone_id=3.
  json out = json::array();
  for (json& e : all) {
    bool keep = true;
    for (const auto& [name, value] : req.params) {
      auto it = e.find(name);
      auto want = ParseId(value);
      if (it == e.end() || !want || !it->is_number_integer() ||
          it->get<Id>() != *want) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(std::move(e));
  }
  SendJson(res, 200, out);
}

void Gateway::Impl::Get(EntityKind kind, Id id, httplib::Response& res) {
  try {
    SendJson(res, 200, store.Snapshot()->EntityJson(kind, id));
  } catch (const InventoryError& e) {
    SendError(res, StatusFor(e), e.what(), e.field());
  }
}

namespace {

std::optional<json> ParseBody(const httplib::Request& req,
                              httplib::Response& res) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    SendError(res, 400, "body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

}  // namespace

void Gateway::Impl::Create(EntityKind kind, const httplib::Request& req,
                           httplib::Response& res) {
  auto body = ParseBody(req, res);
  if (!body) return;
  body->erase("id");
  try {
    json entity = store.Mutate(
        [&](Inventory& inv, std::vector<InventoryChange>& changes) {
          Id id = inv.Register(kind, *body);
          json e = inv.EntityJson(kind, id);
          changes.push_back({kind, e});
          return e;
        });
    SendJson(res, 201, entity);
  } catch (const InventoryError& e) {
    SendError(res, StatusFor(e), e.what(), e.field());
  }
}

void Gateway::Impl::Replace(EntityKind kind, Id id,
                            const httplib::Request& req,
                            httplib::Response& res) {
  auto body = ParseBody(req, res);
  if (!body) return;
  try {
    json entity = store.Mutate(
        [&](Inventory& inv, std::vector<InventoryChange>& changes) {
          inv.Update(kind, id, *body);
          json e = inv.EntityJson(kind, id);
          changes.push_back({kind, e});
          return e;
        });
    SendJson(res, 200, entity);
  } catch (const InventoryError& e) {
    SendError(res, StatusFor(e), e.what(), e.field());
  }
}

void Gateway::Impl::CreateLink(const httplib::Request& req,
                               httplib::Response& res) {
  auto body = ParseBody(req, res);
  if (!body) return;
  try {
    Link requested = LinkFromJson(*body);
    auto [link, created] = store.Mutate(
        [&](Inventory& inv, std::vector<InventoryChange>& changes) {
          bool existed = false;
          for (const Link& l : inv.links()) {
            if (l.zone_id == requested.zone_id &&
                l.target == requested.target && !l.disabled) {
              existed = true;
            }
          }
          Link l = inv.AddLink(requested.zone_id, requested.target);
          if (!existed) changes.push_back({EntityKind::kLink, ToJson(l)});
          return std::make_pair(l, !existed);
        });
    SendJson(res, created ? 201 : 200, ToJson(link));
  } catch (const InventoryError& e) {
    SendError(res, StatusFor(e), e.what(), e.field());
  }
}

void Gateway::Impl::SetLinkState(const httplib::Request& req,
                                 httplib::Response& res) {
  auto body = ParseBody(req, res);
  if (!body) return;
  try {
    Link requested = LinkFromJson(*body);
    Link link = store.Mutate(
        [&](Inventory& inv, std::vector<InventoryChange>& changes) {
          if (requested.disabled) {
            inv.DisableLink(requested.zone_id, requested.target);
          } else {
            inv.AddLink(requested.zone_id, requested.target);
          }
          changes.push_back({EntityKind::kLink, ToJson(requested)});
          return requested;
        });
    SendJson(res, 200, ToJson(link));
  } catch (const InventoryError& e) {
    SendError(res, StatusFor(e), e.what(), e.field());
  }
}

void Gateway::Impl::Stats(const httplib::Request& req,
                          httplib::Response& res) {
  StatsScope scope;
  const std::pair<const char*, std::optional<Id>*> filters[] = {
      {"advertiser", &scope.advertiser}, {"campaign", &scope.campaign},
      {"ad", &scope.ad},                 {"website", &scope.website},
      {"zone", &scope.zone}};
  for (const auto& [name, slot] : filters) {
    if (auto v = Param(req, name)) {
      auto id = ParseId(*v);
      if (!id) return SendError(res, 400, std::string(name) + " must be an id", name);
      *slot = *id;
    }
  }
  TimeRange range{MakeInstant(1970, 1, 1), MakeInstant(3000, 1, 1)};
  if (auto v = Param(req, "from")) {
    auto t = ParseInstant(*v);
    if (!t) return SendError(res, 400, "from must be an ISO-8601 UTC time", "from");
    range.start = *t;
  }
  if (auto v = Param(req, "to")) {
    auto t = ParseInstant(*v);
    if (!t) return SendError(res, 400, "to must be an ISO-8601 UTC time", "to");
    range.end = *t;
  }
  if (range.start > range.end) {
    return SendError(res, 422, "from must not be after to", "from");
  }
  StatsReport report = ledger->QueryStats(*store.Snapshot(), scope, range);
  SendJson(res, 200, ReportJson(report));
}

void Gateway::Impl::Tag(const httplib::Request& req, httplib::Response& res) {
  auto v = Param(req, "zoneid");
  auto id = v ? ParseId(*v) : std::nullopt;
  if (!id) return SendError(res, 400, "zoneid must be a positive integer", "zoneid");
  auto inventory = store.Snapshot();
  const Zone* zone = inventory->FindZone(*id);
  if (!zone) return SendError(res, 404, "zone not found", "zoneid");
  SendJson(res, 200,
           {{"zone_id", zone->id}, {"tag", InvocationTag(*zone, BaseUrl(req))}});
}

void Gateway::Impl::Route() {
  server.Get("/ad", [this](const httplib::Request& req, httplib::Response& res) {
    ServeAd(req, res);
  });
  server.Get("/click",
             [this](const httplib::Request& req, httplib::Response& res) {
               Click(req, res);
             });

  server.set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (req.path.rfind("/api/", 0) == 0 && !Authorized(req)) {
          SendError(res, 401, "missing or invalid admin token");
          return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
      });

  server.Get("/api/stats",
             [this](const httplib::Request& req, httplib::Response& res) {
               Stats(req, res);
             });
  server.Get("/api/tag",
             [this](const httplib::Request& req, httplib::Response& res) {
               Tag(req, res);
             });
  server.Get("/api/links",
             [this](const httplib::Request& req, httplib::Response& res) {
               List(EntityKind::kLink, req, res);
             });
  server.Post("/api/links",
              [this](const httplib::Request& req, httplib::Response& res) {
                CreateLink(req, res);
              });
  server.Put("/api/links",
             [this](const httplib::Request& req, httplib::Response& res) {
               SetLinkState(req, res);
             });

  const std::string collection =
      R"(/api/(advertisers|campaigns|ads|websites|zones|targeting))";
  const std::string member = collection + R"(/(\d+))";
  server.Get(collection, [this](const httplib::Request& req,
                                httplib::Response& res) {
    List(*KindForResource(req.matches[1].str()), req, res);
  });
  server.Post(collection, [this](const httplib::Request& req,
                                 httplib::Response& res) {
    Create(*KindForResource(req.matches[1].str()), req, res);
  });
  server.Get(member, [this](const httplib::Request& req,
                            httplib::Response& res) {
    auto id = ParseId(req.matches[2].str());
    if (!id) return SendError(res, 404, "not found");
    Get(*KindForResource(req.matches[1].str()), *id, res);
  });
  server.Put(member, [this](const httplib::Request& req,
                            httplib::Response& res) {
    auto id = ParseId(req.matches[2].str());
    if (!id) return SendError(res, 404, "not found");
    Replace(*KindForResource(req.matches[1].str()), *id, req, res);
  });

  if (config.console_dir) {
    server.set_mount_point("/console", config.console_dir->string());
  }

  server.set_exception_handler([](const httplib::Request&,
                                  httplib::Response& res,
                                  std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    std::cerr << "adserve: request failed: " << what << "\n";
    SendError(res, 500, what);
  });
}

// ---------------------------------------------------------------------------

Gateway::Gateway(GatewayConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

Gateway::~Gateway() { Stop(); }

int Gateway::Start() {
  auto& c = impl_->config;
  int port = c.port == 0 ? impl_->server.bind_to_any_port(c.host)
                         : (impl_->server.bind_to_port(c.host, c.port)
                                ? c.port
                                : -1);
  if (port < 0) {
    throw std::runtime_error("cannot listen on " + c.host + ":" +
                             std::to_string(c.port));
  }
  c.port = port;
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void Gateway::Run() {
  auto& c = impl_->config;
  if (!impl_->server.listen(c.host, c.port)) {
    throw std::runtime_error("cannot listen on " + c.host + ":" +
                             std::to_string(c.port));
  }
}

void Gateway::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

InventoryStore& Gateway::inventory() { return impl_->store; }
const Ledger& Gateway::ledger() const { return *impl_->ledger; }

}  // namespace adserve
