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

// Admin command-line client. A thin wrapper over the /api endpoints.
//
//   opctl [--url URL] [--token T] [--format table|json] <command> ...
//
//   advertiser|campaign|ad|website|zone add [fields]
//   advertiser|campaign|ad|website|zone list
//   link --zone Z (--campaign C | --ad A) [--disable]
//   target set (--campaign C | --ad A) --dimension D --value V...
//   tag --zone Z
//   stats [--scope kind=id]... [--from T] [--to T]
//   fixture load DIR

#ifndef ADSERVE_OPCTL_H_
#define ADSERVE_OPCTL_H_

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace adserve::opctl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitApiError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr char kDefaultUrl[] = "http://127.0.0.1:8080";

// `args` excludes the program name. `env` supplies ADSERVE_URL and
// ADSERVE_TOKEN; flags override both.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::map<std::string, std::string>& env);

}  // namespace adserve::opctl

#endif  // ADSERVE_OPCTL_H_
