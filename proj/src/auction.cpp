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

#include "lepa/auction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lepa/error.hpp"

namespace lepa::auction {
namespace {

// Bidders able to serve each task, as positions into instance.bids.
std::vector<std::vector<int>> CapableBidders(const SlotInstance& instance,
                                             int excluded) {
  std::vector<std::vector<int>> capable(instance.tasks.size());
  for (int i = 0; i < static_cast<int>(instance.bids.size()); ++i) {
    if (i == excluded) continue;
    for (TaskId j : instance.bids[i].declared_capability) {
      capable[j].push_back(i);
    }
  }
  return capable;
}

std::vector<TaskId> Uncoverable(const SlotInstance& instance, int excluded) {
  const auto capable = CapableBidders(instance, excluded);
  std::vector<TaskId> missing;
  for (const Task& task : instance.tasks) {
    if (static_cast<int>(capable[task.id].size()) < task.requirement) {
      missing.push_back(task.id);
    }
  }
  return missing;
}

std::string DescribeTasks(const std::vector<TaskId>& tasks) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out << (i ? ", " : "") << tasks[i];
  }
  return out.str();
}

// Greedy selection over every bidder except position `excluded` (-1 for
// none). The caller guarantees feasibility.
Selection Greedy(const SlotInstance& instance, int excluded) {
  const int n = static_cast<int>(instance.bids.size());
  const auto capable = CapableBidders(instance, excluded);

  Selection result;
  ResidualMap residual = instance.Requirements();
  long remaining = 0;
  for (int r : residual) remaining += r;

  std::vector<double> virtual_cost(n);
  std::vector<int> coverage(n, 0);
  std::vector<char> available(n, 1);
  for (int i = 0; i < n; ++i) {
    virtual_cost[i] =
        VirtualCost(instance.bids[i], instance.queues[i], instance.config);
    coverage[i] = Coverage(instance.bids[i], residual);
  }
  if (excluded >= 0) available[excluded] = 0;

  while (remaining > 0) {
    int best = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!available[i] || coverage[i] == 0) continue;
      const double ratio = virtual_cost[i] / coverage[i];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio &&
           instance.bids[i].user_id < instance.bids[best].user_id)) {
        best = i;
        best_ratio = ratio;
      }
    }
    if (best < 0) {
      Fail(ErrorCode::kInfeasible, "no bidder can cover the residual demand");
    }
    result.steps.push_back({instance.bids[best].user_id, residual});
    result.winners.push_back(instance.bids[best].user_id);
    available[best] = 0;
    for (TaskId j : instance.bids[best].declared_capability) {
      if (residual[j] == 0) continue;
      --residual[j];
      --remaining;
      if (residual[j] == 0) {
        for (int i : capable[j]) --coverage[i];
      }
    }
  }
  result.final_residual = std::move(residual);
  return result;
}

}  // namespace

void SlotInstance::Validate() const {
  config.Validate();
  if (queues.size() != bids.size()) {
    Fail(ErrorCode::kInvalidParameter,
         "queues must be aligned with the bid list");
  }
  for (std::size_t j = 0; j < tasks.size(); ++j) {
    if (tasks[j].id != j) {
      Fail(ErrorCode::kInvalidParameter, "task ids must be 0..k-1 in order");
    }
    if (tasks[j].requirement < 0) {
      Fail(ErrorCode::kInvalidParameter, "task requirement must be >= 0");
    }
  }
  std::set<UserId> seen;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const Bid& bid = bids[i];
    if (!seen.insert(bid.user_id).second) {
      Fail(ErrorCode::kInvalidParameter, "duplicate user id in bid list");
    }
    if (!(bid.sensing_bid >= 0.0) || !(bid.unit_privacy_bid >= 0.0) ||
        !std::isfinite(bid.sensing_bid) ||
        !std::isfinite(bid.unit_privacy_bid)) {
      Fail(ErrorCode::kInvalidParameter, "bids must be finite and >= 0");
    }
    if (!(queues[i] >= 0.0) || !std::isfinite(queues[i])) {
      Fail(ErrorCode::kInvalidParameter, "queue backlog must be >= 0");
    }
    const auto& cap = bid.declared_capability;
    for (std::size_t t = 0; t < cap.size(); ++t) {
      if (cap[t] >= tasks.size()) {
        std::ostringstream msg;
        msg << "user " << bid.user_id << " declares unknown task " << cap[t];
        Fail(ErrorCode::kInvalidParameter, msg.str());
      }
      if (t > 0 && cap[t] <= cap[t - 1]) {
        Fail(ErrorCode::kInvalidParameter,
             "declared capability must be sorted and unique");
      }
    }
  }
}

ResidualMap SlotInstance::Requirements() const {
  ResidualMap r(tasks.size());
  for (const Task& task : tasks) r[task.id] = task.requirement;
  return r;
}

int SlotInstance::IndexOf(UserId id) const {
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i].user_id == id) return static_cast<int>(i);
  }
  return -1;
}

double VirtualCost(const Bid& bid, double queue, const EngineConfig& config) {
  return bid.sensing_bid + bid.unit_privacy_bid * config.epsilon -
         queue / config.gamma;
}

int Coverage(const Bid& bid, const ResidualMap& residuals) {
  int count = 0;
  for (TaskId j : bid.declared_capability) {
    if (j < residuals.size() && residuals[j] > 0) ++count;
  }
  return count;
}

std::vector<TaskId> UncoverableTasks(const SlotInstance& instance) {
  return Uncoverable(instance, -1);
}

Selection SelectWinners(const SlotInstance& instance) {
  instance.Validate();
  const auto missing = Uncoverable(instance, -1);
  if (!missing.empty()) {
    Fail(ErrorCode::kInfeasible,
         "requirements cannot be covered for tasks: " + DescribeTasks(missing));
  }
  return Greedy(instance, -1);
}

PaymentResult DeterminePayments(const SlotInstance& instance,
                                const Selection& selection) {
  PaymentResult result;
  const EngineConfig& config = instance.config;
  std::unordered_map<UserId, int> position;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    position[instance.bids[i].user_id] = static_cast<int>(i);
  }
  for (UserId winner : selection.winners) {
    const auto found = position.find(winner);
    const int w = found == position.end() ? -1 : found->second;
    if (w < 0) {
      Fail(ErrorCode::kInvalidParameter, "winner is not among the bidders");
    }
    if (!Uncoverable(instance, w).empty()) {
      result.payments[winner] = config.reserve_price;
      result.monopolists.push_back(winner);
      continue;
    }
    const Selection rerun = Greedy(instance, w);
    const Bid& own = instance.bids[w];
    const double add_back = instance.queues[w] / config.gamma;
    double payment = 0.0;
    bool has_setter = false;
    UserId setter = 0;
    for (const SelectionStep& step : rerun.steps) {
      const int own_cov = Coverage(own, step.residual);
      // She could not have taken this pick; the step sets no price.
      if (own_cov == 0) continue;
      const int k = position.at(step.user);
      const int other_cov = Coverage(instance.bids[k], step.residual);
      const double price =
          static_cast<double>(own_cov) / other_cov *
              VirtualCost(instance.bids[k], instance.queues[k], config) +
          add_back;
      if (price > payment) {
        payment = price;
        setter = step.user;
        has_setter = true;
      }
    }
    result.payments[winner] = payment;
    if (has_setter) result.price_setter[winner] = setter;
  }
  return result;
}

SlotOutcome SelectAndPay(const SlotInstance& instance) {
  Selection selection = SelectWinners(instance);
  PaymentResult paid = DeterminePayments(instance, selection);
  SlotOutcome outcome;
  outcome.winners = std::move(selection.winners);
  outcome.selection_order = std::move(selection.steps);
  outcome.payments = std::move(paid.payments);
  outcome.price_setter = std::move(paid.price_setter);
  outcome.monopolists = std::move(paid.monopolists);
  return outcome;
}

SlotOutcome RunSlot(const SlotInstance& instance) {
  SlotOutcome outcome = SelectAndPay(instance);
  const double D = instance.config.participation_rate;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const UserId id = instance.bids[i].user_id;
    outcome.queues_after[id] =
        QueueUpdate(instance.queues[i], outcome.IsWinner(id), D);
  }
  return outcome;
}

Drift DriftExactAndBound(std::span<const double> queues,
                         std::span<const int> selected,
                         double participation_rate) {
  if (queues.size() != selected.size()) {
    Fail(ErrorCode::kInvalidParameter,
         "queue and selection vectors must have equal length");
  }
  const double D = participation_rate;
  Drift drift;
  for (std::size_t i = 0; i < queues.size(); ++i) {
    const double q = queues[i];
    const double x = selected[i] ? 1.0 : 0.0;
    const double next = std::max(q - x, 0.0) + D;
    drift.exact += 0.5 * (next * next - q * q);
    drift.bound += (D * D + 1.0) / 2.0 + q * D - q * x;
  }
  return drift;
}

}  // namespace lepa::auction
