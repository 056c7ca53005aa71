//
// Copyright 2026 The LEPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LEPA_BASELINES_HPP_
#define LEPA_BASELINES_HPP_

#include <map>

#include "lepa/auction.hpp"
#include "lepa/core_model.hpp"

namespace lepa::baselines {

// Myopic per-slot auction: the LEPA selection and payment rules with every
// queue treated as empty. queues_after still carries the virtual queue
// update so that backlogs can be compared across mechanisms.
SlotOutcome StaticSlot(const auction::SlotInstance& instance);

// Hard participation deadlines: every user must be selected at least once
// every `deadline` slots.
struct CompulsoryState {
  std::map<UserId, long> slots_since_selected;
  long deadline = 5;

  // deadline = ceil(1 / D).
  static CompulsoryState ForRate(double participation_rate);
  long SlotsSinceSelected(UserId id) const;
};

// Force-selects every bidder whose slots_since_selected has reached
// deadline - 1, then covers the remaining requirements with the static
// greedy over the other bidders. Greedy winners receive critical payments
// computed on that residual auction; forced winners are paid their declared
// cost b^s + b^p * epsilon. Updates `state` for every bidder.
SlotOutcome CompulsorySlot(const auction::SlotInstance& instance,
                           CompulsoryState& state);

}  // namespace lepa::baselines

#endif  // LEPA_BASELINES_HPP_
