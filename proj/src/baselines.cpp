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

#include "lepa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lepa/error.hpp"

namespace lepa::baselines {
namespace {

void FillQueues(const auction::SlotInstance& instance, SlotOutcome& outcome) {
  const double D = instance.config.participation_rate;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const UserId id = instance.bids[i].user_id;
    outcome.queues_after[id] =
        QueueUpdate(instance.queues[i], outcome.IsWinner(id), D);
  }
}

}  // namespace

SlotOutcome StaticSlot(const auction::SlotInstance& instance) {
  auction::SlotInstance myopic = instance;
  std::fill(myopic.queues.begin(), myopic.queues.end(), 0.0);
  SlotOutcome outcome = auction::SelectAndPay(myopic);
  FillQueues(instance, outcome);
  return outcome;
}

CompulsoryState CompulsoryState::ForRate(double participation_rate) {
  if (!(participation_rate > 0.0 && participation_rate < 1.0)) {
    Fail(ErrorCode::kInvalidParameter,
         "participation rate D must lie in (0, 1)");
  }
  CompulsoryState state;
  state.deadline = static_cast<long>(std::ceil(1.0 / participation_rate));
  return state;
}

long CompulsoryState::SlotsSinceSelected(UserId id) const {
  auto it = slots_since_selected.find(id);
  return it == slots_since_selected.end() ? 0 : it->second;
}

SlotOutcome CompulsorySlot(const auction::SlotInstance& instance,
                           CompulsoryState& state) {
  instance.Validate();
  const auto missing = auction::UncoverableTasks(instance);
  if (!missing.empty()) {
    Fail(ErrorCode::kInfeasible, "compulsory slot has uncoverable tasks");
  }
  const double epsilon = instance.config.epsilon;

  SlotOutcome outcome;
  ResidualMap residual = instance.Requirements();
  auction::SlotInstance fill;
  fill.config = instance.config;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const Bid& bid = instance.bids[i];
    if (state.SlotsSinceSelected(bid.user_id) >= state.deadline - 1) {
      outcome.selection_order.push_back({bid.user_id, residual});
      outcome.winners.push_back(bid.user_id);
      outcome.forced.push_back(bid.user_id);
      outcome.payments[bid.user_id] = bid.DeclaredCost(epsilon);
      for (TaskId j : bid.declared_capability) {
        if (residual[j] > 0) --residual[j];
      }
    } else {
      fill.bids.push_back(bid);
      fill.queues.push_back(0.0);
    }
  }
  fill.tasks = instance.tasks;
  for (Task& task : fill.tasks) task.requirement = residual[task.id];

  const SlotOutcome greedy = auction::SelectAndPay(fill);
  for (const SelectionStep& step : greedy.selection_order) {
    outcome.selection_order.push_back(step);
    outcome.winners.push_back(step.user);
  }
  for (const auto& [id, payment] : greedy.payments) {
    outcome.payments[id] = payment;
  }
  outcome.price_setter = greedy.price_setter;
  outcome.monopolists = greedy.monopolists;
  FillQueues(instance, outcome);

  for (const Bid& bid : instance.bids) {
    if (outcome.IsWinner(bid.user_id)) {
      state.slots_since_selected[bid.user_id] = 0;
    } else {
      ++state.slots_since_selected[bid.user_id];
    }
  }
  return outcome;
}

}  // namespace lepa::baselines
