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

// HTTP front end.
//
//   GET  /ad?zoneid=&format=html|json&source=&context=&country=&city=
//           &browser=&language=
//   GET  /click?adid=&zoneid=                    302 to the landing page
//   GET|POST        /api/{advertisers,campaigns,ads,websites,zones,targeting}
//   GET|PUT         /api/{...}/{id}
//   GET|POST|PUT    /api/links
//   GET  /api/stats?advertiser=&campaign=&ad=&website=&zone=&from=&to=
//   GET  /api/tag?zoneid=
//
// /api requires the admin token in an X-Admin-Token header (or
// "Authorization: Bearer <token>").

#ifndef ADSERVE_GATEWAY_H_
#define ADSERVE_GATEWAY_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "adserve/inventory.h"
#include "adserve/ledger.h"
#include "adserve/matcher.h"

namespace adserve {

inline constexpr std::string_view kAdminTokenHeader = "X-Admin-Token";
inline constexpr std::string_view kNoAdHtml = "<!-- no ad -->";

struct GatewayConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Empty disables the admin API (every /api call gets 401).
  std::string admin_token;
  Money reserve;
  MatcherConfig matcher;
  // Empty keeps everything in memory.
  std::filesystem::path data_dir;
  std::optional<std::filesystem::path> stopwords_file;
  std::optional<std::filesystem::path> corpus_file;
  std::optional<std::filesystem::path> console_dir;
  // How long a served (ad, zone) price is remembered for click pricing.
  std::chrono::seconds decision_ttl{600};
  // Base URL for click links and tags; defaults to http://<Host header>.
  std::string public_url;
  // Defaults to the system clock.
  std::function<Instant()> clock;
};

// The iframe snippet a publisher pastes where the zone should appear.
std::string InvocationTag(const Zone& zone, std::string_view base_url);

class Gateway {
 public:
  // Recovers state from config.data_dir when set. Throws on bad config
  // or unrecoverable data.
  explicit Gateway(GatewayConfig config);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Binds and serves on a background thread. Returns the bound port.
  int Start();
  // Binds and serves on the calling thread until Stop().
  void Run();
  void Stop();

  InventoryStore& inventory();
  const Ledger& ledger() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace adserve

#endif  // ADSERVE_GATEWAY_H_
