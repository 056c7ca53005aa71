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

#ifndef LEPA_CORE_MODEL_HPP_
#define LEPA_CORE_MODEL_HPP_

#include <cstdint>
#include <map>
#include <vector>

namespace lepa {

using UserId = std::uint32_t;
using TaskId = std::uint32_t;

// Confidence half-width `alpha` (data units) and confidence level `delta`.
struct AccuracySpec {
  double alpha = 1.0;
  double delta = 0.1;

  void Validate() const;
};

// A sensing task. Task ids are dense: the task at position j of a task list
// has id j, so residual requirements can be indexed by id.
struct Task {
  TaskId id = 0;
  AccuracySpec spec;
  int requirement = 0;
};

struct User {
  UserId id = 0;
  double true_sensing_cost = 0.0;
  double true_unit_privacy_cost = 0.0;
  std::vector<TaskId> capability;  // sorted, unique
  double queue = 0.0;
  bool alive = true;
  int consecutive_unselected = 0;

  double TrueCost(double epsilon) const {
    return true_sensing_cost + true_unit_privacy_cost * epsilon;
  }
};

struct Bid {
  UserId user_id = 0;
  std::vector<TaskId> declared_capability;  // sorted, unique
  double sensing_bid = 0.0;
  double unit_privacy_bid = 0.0;

  // The declared cost the mechanism sees: b^s + b^p * epsilon.
  double DeclaredCost(double epsilon) const {
    return sensing_bid + unit_privacy_bid * epsilon;
  }
};

// Truthful bid for `user`: declared values equal the private costs.
Bid TruthfulBid(const User& user);

struct EngineConfig {
  double epsilon = 1.0;             // homogeneous privacy level
  double zeta = 1.0;                // range of the sensing data
  double gamma = 1.0;               // drift-plus-penalty weight
  double participation_rate = 0.2;  // minimum selection frequency D
  double reserve_price = 100.0;     // paid to irreplaceable winners

  void Validate() const;
};

// Remaining requirement per task, indexed by task id.
using ResidualMap = std::vector<int>;

struct SelectionStep {
  UserId user = 0;
  ResidualMap residual;  // residual requirements just before the pick
};

struct SlotOutcome {
  std::vector<UserId> winners;              // in selection order
  std::map<UserId, double> payments;        // winners only
  std::vector<SelectionStep> selection_order;
  // For every winner, the rerun winner whose replacement price set the
  // payment. Absent for winners paid through a fallback rule.
  std::map<UserId, UserId> price_setter;
  // Winners that could not be removed without making the slot infeasible;
  // they are paid the reserve price.
  std::vector<UserId> monopolists;
  // Users selected by a baseline's forcing rule rather than by the greedy.
  std::vector<UserId> forced;
  // Post-slot queue backlog per bidder (filled by the online slot runners).
  std::map<UserId, double> queues_after;

  bool IsWinner(UserId id) const { return payments.count(id) != 0; }
  double PaymentOf(UserId id) const;
};

// ceil(2 zeta / (epsilon^2 alpha^2 delta)).
int AccuracyRequirement(const AccuracySpec& spec, double epsilon, double zeta);

// The unrounded requirement; exposed for the monotonicity tests.
double RawAccuracyRequirement(const AccuracySpec& spec, double epsilon,
                              double zeta);

Task MakeTask(TaskId id, const AccuracySpec& spec, double epsilon,
              double zeta);

// q' = max(q - selected, 0) + D.
double QueueUpdate(double queue, bool selected, double participation_rate);

// Definition of a participant's utility: p - c^s - c^p * epsilon when
// selected, 0 otherwise.
double UserUtility(double payment, const User& user, double epsilon,
                   bool selected);

double TotalPayment(const SlotOutcome& outcome);

}  // namespace lepa

#endif  // LEPA_CORE_MODEL_HPP_
