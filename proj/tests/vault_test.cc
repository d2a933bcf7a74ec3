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

#include "adserve/vault.h"

#include <gtest/gtest.h>

#include "adserve/timeutil.h"
#include "recovery_check.h"
#include "test_util.h"

namespace adserve {
namespace {

namespace fs = std::filesystem;

Snapshot DemoSnapshot() {
  return Snapshot{kSnapshotVersion, testing::LoadDemo().inventory,
                  MakeInstant(2013, 3, 1, 9)};
}

std::string ErrorOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const VaultError& e) {
    return e.what();
  }
  return "";
}

TEST(SnapshotTest, RoundTripsFieldForField) {
  testing::TempDir dir;
  Snapshot snap = DemoSnapshot();
  SaveSnapshot(snap, dir.path() / "s.json");
  Snapshot back = LoadSnapshot(dir.path() / "s.json");
  EXPECT_EQ(back.version, kSnapshotVersion);
  EXPECT_EQ(back.created_at, snap.created_at);
  EXPECT_EQ(back.inventory, snap.inventory);
}

TEST(SnapshotTest, CanonicalBytes) {
  testing::TempDir dir;
  Snapshot snap = DemoSnapshot();
  SaveSnapshot(snap, dir.path() / "a.json");
  SaveSnapshot(snap, dir.path() / "b.json");
  std::string a = testing::ReadFile(dir.path() / "a.json");
  EXPECT_EQ(a, testing::ReadFile(dir.path() / "b.json"));
  EXPECT_EQ(a.rfind(R"({"version":1,)", 0), 0u);
  SaveSnapshot(LoadSnapshot(dir.path() / "a.json"), dir.path() / "c.json");
  EXPECT_EQ(a, testing::ReadFile(dir.path() / "c.json"));
  EXPECT_EQ(EncodeSnapshot(DecodeSnapshot(a)), a);
  EXPECT_FALSE(fs::exists(dir.path() / "a.json.tmp"));
}

TEST(SnapshotTest, UnwritablePathIsNamed) {
  std::string path = "/nonexistent-dir/inner/snap.json";
  std::string msg = ErrorOf([&] { SaveSnapshot(DemoSnapshot(), path); });
  EXPECT_NE(msg.find(path), std::string::npos) << msg;
}

TEST(SnapshotTest, RejectsCorruptSnapshots) {
  EXPECT_THROW(DecodeSnapshot("{"), VaultError);
  EXPECT_THROW(DecodeSnapshot(R"({"version":2,"created_at":"2013-03-01T00:00:00Z","entities":{}})"),
               VaultError);
  EXPECT_THROW(DecodeSnapshot(R"({"version":1,"created_at":"2013-03-01T00:00:00Z","entities":{"ads":[{"id":1}]}})"),
               VaultError);
}

TEST(RecoverTest, EmptyDirectory) {
  testing::TempDir dir;
  Recovered r = Recover(dir.path() / kSnapshotFile, dir.path() / kEventLogFile);
  EXPECT_EQ(r.inventory, Inventory());
  EXPECT_TRUE(r.buckets.empty());
  EXPECT_FALSE(r.from_snapshot);
}

TEST(RecoverTest, FoldsDeliveryLines) {
  testing::TempDir dir;
  {
    FileEventSink sink(dir.path() / kEventLogFile);
    Ledger ledger(&sink);
    for (int i = 0; i < 3; ++i) {
      ledger.LogEvent({EventKind::kImpression, 7, 2,
                       MakeInstant(2013, 3, 1, 10, i), Money()});
    }
  }
  Recovered r = Recover(dir.path() / kSnapshotFile, dir.path() / kEventLogFile);
  ASSERT_EQ(r.buckets.size(), 1u);
  EXPECT_EQ(r.buckets[0].impressions, 3);
  EXPECT_EQ(r.delivery_events, 3u);
}

TEST(RecoverTest, CorruptLineIsNumbered) {
  testing::TempDir dir;
  std::string good =
      R"({"kind":"impression","ad_id":7,"zone_id":2,"ts":"2013-03-01T10:00:00Z","price":0})";
  testing::WriteFile(dir.path() / kEventLogFile, good + "\ngarbage\n" + good + "\n");
  std::string msg = ErrorOf(
      [&] { Recover(dir.path() / kSnapshotFile, dir.path() / kEventLogFile); });
  EXPECT_NE(msg.find("event log line 2"), std::string::npos) << msg;
}

TEST(RecoverTest, TornLastLineIsReported) {
  testing::TempDir dir;
  std::string good =
      R"({"kind":"impression","ad_id":7,"zone_id":2,"ts":"2013-03-01T10:00:00Z","price":0})";
  testing::WriteFile(dir.path() / kEventLogFile, good + "\n" + good.substr(0, 20));
  std::string msg = ErrorOf(
      [&] { Recover(dir.path() / kSnapshotFile, dir.path() / kEventLogFile); });
  EXPECT_NE(msg.find("event log line 2"), std::string::npos) << msg;
}

TEST(RecoverTest, BadSnapshotAborts) {
  testing::TempDir dir;
  testing::WriteFile(dir.path() / kSnapshotFile, "{\"version\":9}");
  EXPECT_THROW(Recover(dir.path() / kSnapshotFile, dir.path() / kEventLogFile),
               VaultError);
}

TEST(VaultTest, AdminRecordsRegenerateMissingSnapshot) {
  testing::TempDir dir;
  InventoryStore store;
  Vault vault(dir.path() / "data");
  store.SetCommitHook([&](const Inventory& inv,
                          const std::vector<InventoryChange>& changes) {
    vault.Persist(inv, changes, MakeInstant(2013, 3, 1));
  });
  Inventory want;
  store.Mutate([&](Inventory& inv, std::vector<InventoryChange>& ch) {
    auto ids = LoadFixtureInto(inv, testing::FixtureDir());
    for (const auto& [id, a] : inv.advertisers()) ch.push_back({EntityKind::kAdvertiser, ToJson(a)});
    for (const auto& [id, c] : inv.campaigns()) ch.push_back({EntityKind::kCampaign, ToJson(c)});
    for (const auto& [id, a] : inv.ads()) ch.push_back({EntityKind::kAd, ToJson(a)});
    for (const auto& [id, w] : inv.websites()) ch.push_back({EntityKind::kWebsite, ToJson(w)});
    for (const auto& [id, z] : inv.zones()) ch.push_back({EntityKind::kZone, ToJson(z)});
    for (const Link& l : inv.links()) ch.push_back({EntityKind::kLink, ToJson(l)});
    want = inv;
    return ids.size();
  });
  store.Mutate([&](Inventory& inv, std::vector<InventoryChange>& ch) {
    Id ad = inv.ads().begin()->first;
    nlohmann::json j = inv.EntityJson(EntityKind::kAd, ad);
    j["title"] = "Renamed";
    inv.Update(EntityKind::kAd, ad, j);
    ch.push_back({EntityKind::kAd, inv.EntityJson(EntityKind::kAd, ad)});
    want = inv;
    return 0;
  });

  Recovered with = vault.Recover();
  EXPECT_TRUE(with.from_snapshot);
  EXPECT_EQ(with.inventory, want);

  fs::remove(vault.snapshot_path());
  Recovered without = vault.Recover();
  EXPECT_FALSE(without.from_snapshot);
  EXPECT_GT(without.admin_records, 0u);
  EXPECT_EQ(without.inventory, want);
}

TEST(VaultTest, CreatesDirectory) {
  testing::TempDir dir;
  Vault vault(dir.path() / "a" / "b");
  EXPECT_TRUE(fs::is_directory(dir.path() / "a" / "b"));
}

TEST(VaultTest, TruncationAtLineBoundaries) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    EXPECT_EQ(testing::TruncationMismatches(seed, 10), 0) << "seed " << seed;
  }
}

}  // namespace
}  // namespace adserve
