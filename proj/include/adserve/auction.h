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

// Generalized second-price slot auction. Slots are filled in bid order and
// each winner pays the bid of the candidate directly below it, or the
// reserve when nobody is below.

#ifndef ADSERVE_AUCTION_H_
#define ADSERVE_AUCTION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "adserve/matcher.h"

namespace adserve {

struct SlotAssignment {
  size_t slot_index = 0;  // 0 is the top slot
  Id ad_id = 0;
  Money price;            // per click

  bool operator==(const SlotAssignment&) const = default;
};

// `candidates` must be sorted by bid, highest first; throws
// std::invalid_argument if not, if slots == 0, or if reserve < 0.
// Candidates bidding below the reserve never take part.
std::vector<SlotAssignment> GspAssign(std::span<const Candidate> candidates,
                                      size_t slots, Money reserve);

// Relevance-weighted variant for RankMode::kWeighted. `candidates` must be
// sorted by bid x relevance, highest first. Winner i pays the smallest bid
// that would still have ranked it above candidate i + 1:
//   ceil(bid[i+1] * rel[i+1] / rel[i]), clamped to [reserve, bid[i]].
std::vector<SlotAssignment> WeightedGspAssign(
    std::span<const Candidate> candidates, size_t slots, Money reserve);

}  // namespace adserve

#endif  // ADSERVE_AUCTION_H_
