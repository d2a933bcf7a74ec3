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

// On-disk state under one data directory:
//
//   inventory.snapshot.json  canonical JSON, rewritten atomically on every
//                            inventory change
//   events.log               one JSON object per line: impressions, clicks
//                            and admin records ({"kind":"admin",...})
//
// Admin records carry the full post-change entity, so replaying them from
// an empty inventory regenerates the snapshot when it is missing.

#ifndef ADSERVE_VAULT_H_
#define ADSERVE_VAULT_H_

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adserve/inventory.h"
#include "adserve/ledger.h"

namespace adserve {

inline constexpr int kSnapshotVersion = 1;
inline constexpr std::string_view kSnapshotFile = "inventory.snapshot.json";
inline constexpr std::string_view kEventLogFile = "events.log";

class VaultError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  int version = kSnapshotVersion;
  Inventory inventory;
  Instant created_at{};
};

// Canonical bytes: version first, every other key sorted, one line.
std::string EncodeSnapshot(const Snapshot& snapshot);
Snapshot DecodeSnapshot(std::string_view text);

// Writes to a sibling temp file and renames it over `path`.
void SaveSnapshot(const Snapshot& snapshot, const std::filesystem::path& path);
Snapshot LoadSnapshot(const std::filesystem::path& path);

std::string EncodeAdminRecord(const InventoryChange& change, Instant at);

struct Recovered {
  Inventory inventory;
  std::vector<BucketRecord> buckets;
  size_t delivery_events = 0;
  size_t admin_records = 0;
  bool from_snapshot = false;
};

// Missing files count as empty. Inventory comes from the snapshot when one
// exists, otherwise from replaying the log's admin records. Buckets are
// the fold of the log's impression and click lines. Throws VaultError on
// a bad snapshot or a corrupt log line (naming its 1-based number).
Recovered Recover(const std::filesystem::path& snapshot_path,
                  const std::filesystem::path& log_path);

// Append-only line writer; each Append is flushed before returning.
class FileEventSink : public EventSink {
 public:
  explicit FileEventSink(const std::filesystem::path& path);
  ~FileEventSink() override;
  FileEventSink(const FileEventSink&) = delete;
  FileEventSink& operator=(const FileEventSink&) = delete;

  void Append(std::string_view line) override;

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::FILE* file_ = nullptr;
};

class Vault {
 public:
  // Creates the directory if needed.
  explicit Vault(std::filesystem::path dir);

  std::filesystem::path snapshot_path() const { return dir_ / kSnapshotFile; }
  std::filesystem::path log_path() const { return dir_ / kEventLogFile; }

  Recovered Recover() const;

  // Commit hook for InventoryStore: snapshot first, then admin records.
  void Persist(const Inventory& inventory,
               const std::vector<InventoryChange>& changes, Instant now);

  EventSink& events() { return sink_; }

 private:
  std::filesystem::path dir_;
  FileEventSink sink_;
};

}  // namespace adserve

#endif  // ADSERVE_VAULT_H_
