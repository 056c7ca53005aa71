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

#ifndef LEPA_ORACLE_HPP_
#define LEPA_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lepa/auction.hpp"
#include "lepa/core_model.hpp"
#include "lepa/random.hpp"

namespace lepa::oracle {

// Exhaustive solvers enumerate 2^n subsets.
inline constexpr int kMaxEnumerationUsers = 20;

struct CoverSolution {
  double value = 0.0;
  std::vector<UserId> chosen;
};

// Minimum of sum (c_i - q_i / gamma) x_i over covering selections, with the
// payment of each chosen user fixed at her (truthfully bid) cost.
CoverSolution BruteForceOtpm(const auction::SlotInstance& instance);

// The same covering problem with every cost shifted by m = max q_i / gamma,
// which makes all coefficients nonnegative.
CoverSolution BruteForceOtcm(const auction::SlotInstance& instance);

// Depth-first branch and bound for the unshifted problem. Shares nothing
// with the enumerator; used to cross-check it.
CoverSolution BranchAndBoundOtpm(const auction::SlotInstance& instance);

// m = max_i q_i / gamma (0 for an empty bid list).
double QueueShift(const auction::SlotInstance& instance);

double Harmonic(long d);

struct BoundCertificate {
  long theta = 0;
  long d = 0;
  double harmonic_d = 0.0;
  // max_i vc(k_i) / min over winners of (vc_i + m); bound_value uses this.
  double delta_ratio = 0.0;
  // Same numerator over min_i (vc(k_i) + m); reported for audit only.
  double setter_delta_ratio = 0.0;
  bool setter_bound_holds = false;  // P <= bound with setter_delta_ratio
  double m = 0.0;
  double p_star = 0.0;
  double m_star = 0.0;
  double mechanism_payment = 0.0;
  double bound_value = 0.0;
  // Sum over winners of c_i - q_i/gamma + m, and the greedy-cover bound
  // 2 theta H_d M* it is compared with.
  double shifted_winner_cost = 0.0;
  double greedy_bound = 0.0;
  long n = 0;
  bool lemma_holds = false;         // M* <= P* + m n
  bool greedy_bound_holds = false;  // shifted_winner_cost <= greedy_bound
  bool passed = false;              // P <= bound_value
};

// Runs the mechanism truthfully on `instance`, solves both covering
// problems exhaustively and evaluates the approximation bound. delta is the
// ratio max_i v(k_i) / min_i (v(k_i) + m), where k_i is the rerun user that
// set winner i's payment and v is her virtual cost. Throws kDegenerateRatio
// when that denominator is not positive or a winner has no price setter.
BoundCertificate CertifyBound(const auction::SlotInstance& instance);

using Mechanism = std::function<SlotOutcome(const auction::SlotInstance&)>;

struct TruthViolation {
  Bid misreport;
  double truthful_utility = 0.0;
  double misreport_utility = 0.0;
};

// Utility of `user_id` (true costs taken from her bid in `instance`) when
// she submits each misreport instead. A misreport that makes the slot
// infeasible yields utility 0. Reports gains above `tolerance`.
std::vector<TruthViolation> TruthfulnessProbe(
    const auction::SlotInstance& instance, UserId user_id,
    std::span<const Bid> misreports, const Mechanism& mechanism = {},
    double tolerance = 1e-9);

// Misreports around a truthful bid: b^s and b^p drawn on [0, 2c + 1] and,
// for half of them, a random nonempty subset of the capability set.
std::vector<Bid> SampleMisreports(const Bid& truth, int count, Rng& rng);

struct InstanceOptions {
  int min_n = 2;
  int max_n = 8;
  int min_k = 1;
  int max_k = 4;
  double cost_lo = 1.0;
  double cost_hi = 2.0;
  double epsilon_lo = 0.5;
  double epsilon_hi = 2.0;
  double gamma = 10.0;
  // Queues are drawn on [0, max_queue]; with the defaults q/gamma stays
  // below the smallest declared cost, so every virtual cost is positive.
  double max_queue = 10.0;
  int max_requirement = 3;
};

// Random small slot with truthful bids in which every task can still be
// covered after removing any single bidder.
auction::SlotInstance RandomInstance(const InstanceOptions& options,
                                     Rng& rng);

}  // namespace lepa::oracle

#endif  // LEPA_ORACLE_HPP_
