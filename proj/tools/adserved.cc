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

// adserved: the ad server daemon.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adserve/fixture.h"
#include "adserve/gateway.h"
#include "adserve/timeutil.h"

namespace {

using adserve::EntityKind;
using adserve::Inventory;
using adserve::InventoryChange;

bool SplitListen(const std::string& listen, std::string& host, int& port) {
  size_t colon = listen.rfind(':');
  if (colon == std::string::npos) return false;
  host = listen.substr(0, colon);
  try {
    size_t used = 0;
    port = std::stoi(listen.substr(colon + 1), &used);
    if (used != listen.size() - colon - 1) return false;
  } catch (const std::exception&) {
    return false;
  }
  if (host.empty()) host = "0.0.0.0";
  return port >= 0 && port <= 65535;
}

void AppendAll(const Inventory& inv, std::vector<InventoryChange>& changes) {
  auto all = [&](EntityKind kind, const auto& table) {
    for (const auto& [id, e] : table) changes.push_back({kind, adserve::ToJson(e)});
  };
  all(EntityKind::kAdvertiser, inv.advertisers());
  all(EntityKind::kCampaign, inv.campaigns());
  all(EntityKind::kAd, inv.ads());
  all(EntityKind::kWebsite, inv.websites());
  all(EntityKind::kZone, inv.zones());
  all(EntityKind::kTargeting, inv.rules());
  for (const adserve::Link& l : inv.links()) {
    changes.push_back({EntityKind::kLink, adserve::ToJson(l)});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual ad server.", "adserved"};
  std::string listen = "127.0.0.1:8080";
  std::string token;
  std::string reserve = "0";
  double threshold = adserve::kDefaultRelevanceThreshold;
  std::string billing_tz = "UTC";
  std::string data_dir = "./adserve-data";
  std::string rank = "bid";
  std::string stopwords, corpus, console, public_url, fixture;
  int ttl = 600;

  app.add_option("--listen", listen, "host:port")
      ->envname("ADSERVE_LISTEN")->capture_default_str();
  app.add_option("--admin-token", token, "Shared secret for /api")
      ->envname("ADSERVE_ADMIN_TOKEN");
  app.add_option("--reserve", reserve, "Reserve price per click")
      ->envname("ADSERVE_RESERVE")->capture_default_str();
  app.add_option("--relevance-threshold", threshold,
                 "Minimum relevance for contextual zones")
      ->envname("ADSERVE_RELEVANCE_THRESHOLD")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  app.add_option("--billing-tz", billing_tz, "UTC or a fixed offset like +07:00")
      ->envname("ADSERVE_BILLING_TZ")->capture_default_str();
  app.add_option("--data-dir", data_dir, "Snapshot and event log directory")
      ->envname("ADSERVE_DATA_DIR")->capture_default_str();
  app.add_option("--rank", rank, "bid or weighted")
      ->envname("ADSERVE_RANK")
      ->check(CLI::IsMember({"bid", "weighted"}))->capture_default_str();
  app.add_option("--stopwords", stopwords, "Stopword list replacing the built-in one")
      ->envname("ADSERVE_STOPWORDS")->check(CLI::ExistingFile);
  app.add_option("--corpus", corpus, "Background corpus for IDF, one document per line")
      ->envname("ADSERVE_CORPUS")->check(CLI::ExistingFile);
  app.add_option("--console-dir", console, "Static files served under /console")
      ->envname("ADSERVE_CONSOLE_DIR")->check(CLI::ExistingDirectory);
  app.add_option("--public-url", public_url, "Base URL used in tags and click links")
      ->envname("ADSERVE_PUBLIC_URL");
  app.add_option("--decision-ttl", ttl, "Seconds a served price is kept for clicks")
      ->envname("ADSERVE_DECISION_TTL")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--fixture", fixture, "Load this fixture when the inventory is empty")
      ->check(CLI::ExistingDirectory);
  CLI11_PARSE(app, argc, argv);

  adserve::GatewayConfig config;
  if (!SplitListen(listen, config.host, config.port)) {
    std::cerr << "adserved: --listen must be host:port, got '" << listen << "'\n";
    return 2;
  }
  auto money = adserve::ParseMoney(reserve);
  if (!money || money->micros < 0) {
    std::cerr << "adserved: bad --reserve '" << reserve << "'\n";
    return 2;
  }
  auto offset = adserve::ParseUtcOffset(billing_tz);
  if (!offset) {
    std::cerr << "adserved: bad --billing-tz '" << billing_tz << "'\n";
    return 2;
  }
  config.admin_token = token;
  config.reserve = *money;
  config.matcher.relevance_threshold = threshold;
  config.matcher.billing_offset = *offset;
  config.matcher.rank =
      rank == "weighted" ? adserve::RankMode::kWeighted : adserve::RankMode::kBid;
  config.data_dir = data_dir;
  if (!stopwords.empty()) config.stopwords_file = stopwords;
  if (!corpus.empty()) config.corpus_file = corpus;
  if (!console.empty()) config.console_dir = console;
  config.public_url = public_url;
  config.decision_ttl = std::chrono::seconds(ttl);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  try {
    adserve::Gateway gateway(config);
    if (!fixture.empty() && gateway.inventory().Snapshot()->next_id() == 1) {
      gateway.inventory().Mutate(
          [&](Inventory& inv, std::vector<InventoryChange>& changes) {
            adserve::LoadFixtureInto(inv, fixture);
            AppendAll(inv, changes);
            return 0;
          });
      std::cerr << "adserved: loaded fixture " << fixture << "\n";
    }
    int port = gateway.Start();
    std::cerr << "adserved: listening on " << config.host << ":" << port
              << (token.empty() ? " (admin API disabled: no token)" : "")
              << "\n";
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "adserved: shutting down\n";
    gateway.Stop();
  } catch (const std::exception& e) {
    std::cerr << "adserved: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
