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

#ifndef LEPA_AUCTION_HPP_
#define LEPA_AUCTION_HPP_

#include <map>
#include <span>
#include <vector>

#include "lepa/core_model.hpp"

namespace lepa::auction {

// One slot of the online auction: the bids of every participating user,
// the task list (ids 0..k-1), and each bidder's queue backlog. `queues` is
// aligned with `bids`.
struct SlotInstance {
  std::vector<Bid> bids;
  std::vector<Task> tasks;
  std::vector<double> queues;
  EngineConfig config;

  // Checks structural invariants (aligned queues, known task ids, sorted
  // capability lists, distinct user ids, nonnegative bids and queues).
  void Validate() const;
  ResidualMap Requirements() const;
  // Position of `id` in `bids`, or -1.
  int IndexOf(UserId id) const;
};

// b^s + b^p * epsilon - q / gamma. Not clamped; a long backlog makes it
// negative.
double VirtualCost(const Bid& bid, double queue, const EngineConfig& config);

// Number of declared tasks whose residual requirement is still positive.
int Coverage(const Bid& bid, const ResidualMap& residuals);

struct Selection {
  std::vector<UserId> winners;  // in pick order
  std::vector<SelectionStep> steps;
  ResidualMap final_residual;
};

// Tasks whose requirement exceeds the number of bidders able to serve them.
std::vector<TaskId> UncoverableTasks(const SlotInstance& instance);

// Greedy winner selection: repeatedly picks the unselected bidder with
// positive coverage minimising virtual_cost / coverage (ties to the lowest
// user id) until every residual requirement reaches zero. Throws
// kInfeasible, naming the uncoverable tasks, before any selection happens.
Selection SelectWinners(const SlotInstance& instance);

struct PaymentResult {
  std::map<UserId, double> payments;
  std::map<UserId, UserId> price_setter;
  std::vector<UserId> monopolists;
};

// Critical payments. For each winner the selection is rerun without her; at
// every rerun pick k where she still had positive coverage, her replacement
// price is cov_i / cov_k * virtual_cost(k) + q_i / gamma, and she is paid the
// largest one (running max from 0). A winner whose removal makes the slot
// infeasible is paid config.reserve_price and listed in `monopolists`.
PaymentResult DeterminePayments(const SlotInstance& instance,
                                const Selection& selection);

// Selection, payments, and the post-slot queue of every bidder.
SlotOutcome RunSlot(const SlotInstance& instance);

// Same as RunSlot but without the queue update; shared by the baselines and
// by the property probes.
SlotOutcome SelectAndPay(const SlotInstance& instance);

struct Drift {
  double exact = 0.0;  // L(t+1) - L(t), L = sum q^2 / 2
  double bound = 0.0;  // sum (D^2+1)/2 + sum q D - sum q x
};

Drift DriftExactAndBound(std::span<const double> queues,
                         std::span<const int> selected,
                         double participation_rate);

}  // namespace lepa::auction

#endif  // LEPA_AUCTION_HPP_
