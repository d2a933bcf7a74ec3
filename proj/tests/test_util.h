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

#ifndef ADSERVE_TESTS_TEST_UTIL_H_
#define ADSERVE_TESTS_TEST_UTIL_H_

#include <stdlib.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adserve/fixture.h"
#include "adserve/inventory.h"

namespace adserve::testing {

inline std::filesystem::path DataDir() { return ADSERVE_DATA_DIR; }
inline std::filesystem::path FixtureDir() { return ADSERVE_FIXTURE_DIR; }
inline std::filesystem::path GoldenDir() { return ADSERVE_GOLDEN_DIR; }

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

// Removed with its contents on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "adserve-test-XXXXXX")
            .string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct DemoInventory {
  Inventory inventory;
  std::map<std::string, Id> ids;

  Id id(const std::string& key) const { return ids.at(key); }
  std::string key(Id id) const {
    for (const auto& [k, v] : ids) {
      if (v == id) return k;
    }
    return "?";
  }
};

inline DemoInventory LoadDemo() {
  DemoInventory demo;
  demo.ids = LoadFixtureInto(demo.inventory, FixtureDir());
  return demo;
}

}  // namespace adserve::testing

#endif  // ADSERVE_TESTS_TEST_UTIL_H_
