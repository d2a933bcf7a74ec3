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

#include "adserve/auction.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adserve {

namespace {

void CheckArgs(size_t slots, Money reserve) {
  if (slots < 1) throw std::invalid_argument("slots must be at least 1");
  if (reserve.micros < 0) {
    throw std::invalid_argument("reserve must not be negative");
  }
}

std::vector<const Candidate*> AboveReserve(
    std::span<const Candidate> candidates, Money reserve) {
  std::vector<const Candidate*> out;
  for (const Candidate& c : candidates) {
    if (c.bid >= reserve) out.push_back(&c);
  }
  return out;
}

double Score(const Candidate& c) {
  return static_cast<double>(c.bid.micros) * c.relevance;
}

}  // namespace

std::vector<SlotAssignment> GspAssign(std::span<const Candidate> candidates,
                                      size_t slots, Money reserve) {
  CheckArgs(slots, reserve);
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].bid > candidates[i - 1].bid) {
      throw std::invalid_argument("candidates must be sorted by bid, descending");
    }
  }
  auto bidders = AboveReserve(candidates, reserve);
  const size_t winners = std::min(slots, bidders.size());
  std::vector<SlotAssignment> out;
  out.reserve(winners);
  for (size_t i = 0; i < winners; ++i) {
    Money price = reserve;
    if (i + 1 < bidders.size()) price = std::max(bidders[i + 1]->bid, reserve);
    out.push_back({i, bidders[i]->ad.id, price});
  }
  return out;
}

std::vector<SlotAssignment> WeightedGspAssign(
    std::span<const Candidate> candidates, size_t slots, Money reserve) {
  CheckArgs(slots, reserve);
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (Score(candidates[i]) > Score(candidates[i - 1])) {
      throw std::invalid_argument(
          "candidates must be sorted by bid x relevance, descending");
    }
  }
  auto bidders = AboveReserve(candidates, reserve);
  const size_t winners = std::min(slots, bidders.size());
  std::vector<SlotAssignment> out;
  out.reserve(winners);
  for (size_t i = 0; i < winners; ++i) {
    const Candidate& winner = *bidders[i];
    Money price = reserve;
    if (i + 1 < bidders.size() && winner.relevance > 0.0) {
      double needed = std::ceil(Score(*bidders[i + 1]) / winner.relevance);
      price = Money(static_cast<std::int64_t>(needed));
    }
    price = std::clamp(price, reserve, std::max(reserve, winner.bid));
    out.push_back({i, winner.ad.id, price});
  }
  return out;
}

}  // namespace adserve
