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

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "adserve/timeutil.h"
#include "json.hpp"

namespace adserve {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string ErrnoText() { return std::strerror(errno); }

}  // namespace

std::string EncodeSnapshot(const Snapshot& snapshot) {
  std::string out = "{\"version\":" + std::to_string(snapshot.version);
  out += ",\"created_at\":\"" + FormatInstant(snapshot.created_at) + "\"";
  out += ",\"entities\":" + snapshot.inventory.ToJson().dump();
  out += "}\n";
  return out;
}

Snapshot DecodeSnapshot(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw VaultError("snapshot is not valid JSON");
  }
  auto version = j.find("version");
  if (version == j.end() || !version->is_number_integer()) {
    throw VaultError("snapshot has no version");
  }
  if (version->get<int>() != kSnapshotVersion) {
    throw VaultError("snapshot version " + std::to_string(version->get<int>()) +
                     " is not supported (expected " +
                     std::to_string(kSnapshotVersion) + ")");
  }
  Snapshot snapshot;
  auto created = j.find("created_at");
  if (created == j.end() || !created->is_string()) {
    throw VaultError("snapshot has no created_at");
  }
  auto at = ParseInstant(created->get<std::string>());
  if (!at) throw VaultError("snapshot created_at is malformed");
  snapshot.created_at = *at;
  auto entities = j.find("entities");
  if (entities == j.end()) throw VaultError("snapshot has no entities");
  try {
    snapshot.inventory = Inventory::FromJson(*entities);
  } catch (const std::exception& e) {
    throw VaultError(std::string("snapshot entities are invalid: ") + e.what());
  }
  return snapshot;
}

void SaveSnapshot(const Snapshot& snapshot, const fs::path& path) {
  const std::string bytes = EncodeSnapshot(snapshot);
  fs::path tmp = path;
  tmp += ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) {
    throw VaultError("cannot write snapshot " + path.string() + ": " +
                     ErrnoText());
  }
  bool ok = std::fwrite(bytes.data(), 1, bytes.size(), f) == bytes.size();
  ok = std::fflush(f) == 0 && ok;
  ok = std::fclose(f) == 0 && ok;
  if (!ok) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw VaultError("cannot write snapshot " + path.string() + ": " +
                     ErrnoText());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw VaultError("cannot replace snapshot " + path.string() + ": " +
                     ec.message());
  }
}

Snapshot LoadSnapshot(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VaultError("cannot read snapshot " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return DecodeSnapshot(buf.str());
  } catch (const VaultError& e) {
    throw VaultError(path.string() + ": " + e.what());
  }
}

std::string EncodeAdminRecord(const InventoryChange& change, Instant at) {
  std::string line = "{\"kind\":\"admin\",\"entity_kind\":\"";
  line += EntityKindName(change.kind);
  line += "\",\"ts\":\"" + FormatInstant(at) + "\",\"entity\":";
  line += change.entity.dump();
  line += "}";
  return line;
}

Recovered Recover(const fs::path& snapshot_path, const fs::path& log_path) {
  Recovered out;
  if (fs::exists(snapshot_path)) {
    out.inventory = LoadSnapshot(snapshot_path).inventory;
    out.from_snapshot = true;
  }

  std::ifstream in(log_path, std::ios::binary);
  if (!in) {
    if (fs::exists(log_path)) {
      throw VaultError("cannot read event log " + log_path.string());
    }
    return out;
  }

  std::vector<DeliveryEvent> events;
  Inventory replayed;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line, nullptr, false);
      if (j.is_object() && j.value("kind", "") == "admin") {
        auto kind = ParseEntityKind(j.value("entity_kind", ""));
        if (!kind || !j.contains("entity")) {
          throw std::invalid_argument("malformed admin record");
        }
        if (!out.from_snapshot) replayed.Apply(*kind, j.at("entity"));
        ++out.admin_records;
        continue;
      }
      events.push_back(DecodeEvent(line));
    } catch (const std::exception& e) {
      throw VaultError("event log line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  if (!out.from_snapshot) out.inventory = std::move(replayed);
  out.delivery_events = events.size();
  out.buckets = Ledger::Fold(events);
  return out;
}

FileEventSink::FileEventSink(const fs::path& path) : path_(path) {
  file_ = std::fopen(path.c_str(), "ab");
  if (!file_) {
    throw VaultError("cannot open event log " + path.string() + ": " +
                     ErrnoText());
  }
}

FileEventSink::~FileEventSink() {
  if (file_) std::fclose(file_);
}

void FileEventSink::Append(std::string_view line) {
  std::lock_guard<std::mutex> lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
      std::fputc('\n', file_) == EOF || std::fflush(file_) != 0) {
    throw VaultError("cannot append to event log " + path_.string() + ": " +
                     ErrnoText());
  }
}

namespace {

fs::path EnsureDir(fs::path dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw VaultError("cannot create data directory " + dir.string() + ": " +
                     ec.message());
  }
  return dir;
}

}  // namespace

Vault::Vault(fs::path dir)
    : dir_(EnsureDir(std::move(dir))), sink_(dir_ / kEventLogFile) {}

Recovered Vault::Recover() const {
  return adserve::Recover(snapshot_path(), log_path());
}

void Vault::Persist(const Inventory& inventory,
                    const std::vector<InventoryChange>& changes, Instant now) {
  SaveSnapshot(Snapshot{kSnapshotVersion, inventory, now}, snapshot_path());
  for (const InventoryChange& change : changes) {
    sink_.Append(EncodeAdminRecord(change, now));
  }
}

}  // namespace adserve
