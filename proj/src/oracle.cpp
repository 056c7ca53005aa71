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

#include "lepa/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "lepa/error.hpp"

namespace lepa::oracle {
namespace {

void CheckSize(const auction::SlotInstance& instance) {
  if (static_cast<int>(instance.bids.size()) > kMaxEnumerationUsers) {
    std::ostringstream msg;
    msg << "exhaustive search is limited to " << kMaxEnumerationUsers
        << " users, got " << instance.bids.size();
    Fail(ErrorCode::kSizeLimit, msg.str());
  }
}

std::vector<double> CoverCosts(const auction::SlotInstance& instance,
                               double shift) {
  std::vector<double> cost;
  cost.reserve(instance.bids.size());
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    cost.push_back(auction::VirtualCost(instance.bids[i], instance.queues[i],
                                        instance.config) +
                   shift);
  }
  return cost;
}

CoverSolution Enumerate(const auction::SlotInstance& instance, double shift) {
  instance.Validate();
  CheckSize(instance);
  const int n = static_cast<int>(instance.bids.size());
  const std::vector<double> cost = CoverCosts(instance, shift);

  std::vector<std::uint32_t> capable_mask(instance.tasks.size(), 0);
  for (int i = 0; i < n; ++i) {
    for (TaskId j : instance.bids[i].declared_capability) {
      capable_mask[j] |= 1u << i;
    }
  }

  bool found = false;
  double best = 0.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    bool covers = true;
    for (const Task& task : instance.tasks) {
      if (std::popcount(mask & capable_mask[task.id]) < task.requirement) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) value += cost[i];
    }
    if (!found || value < best) {
      found = true;
      best = value;
      best_mask = mask;
    }
  }
  if (!found) {
    Fail(ErrorCode::kInfeasible, "no selection covers every requirement");
  }
  CoverSolution solution;
  solution.value = best;
  for (int i = 0; i < n; ++i) {
    if (best_mask & (1u << i)) {
      solution.chosen.push_back(instance.bids[i].user_id);
    }
  }
  return solution;
}

// Branch-and-bound search state, users visited in bid order.
class BranchAndBound {
 public:
  explicit BranchAndBound(const auction::SlotInstance& instance)
      : instance_(instance),
        cost_(CoverCosts(instance, 0.0)),
        residual_(instance.Requirements()),
        chosen_(instance.bids.size(), false) {
    const std::size_t n = instance.bids.size();
    // Suffix tables: how many users from position i onward can serve each
    // task, and the most negative total cost they could still add.
    remaining_capable_.assign(n + 1, std::vector<int>(instance.tasks.size()));
    negative_tail_.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      remaining_capable_[i] = remaining_capable_[i + 1];
      for (TaskId j : instance.bids[i].declared_capability) {
        ++remaining_capable_[i][j];
      }
      negative_tail_[i] = negative_tail_[i + 1] + std::min(cost_[i], 0.0);
    }
  }

  CoverSolution Solve() {
    Visit(0, 0.0);
    if (!found_) {
      Fail(ErrorCode::kInfeasible, "no selection covers every requirement");
    }
    CoverSolution solution;
    solution.value = best_;
    for (std::size_t i = 0; i < best_chosen_.size(); ++i) {
      if (best_chosen_[i]) solution.chosen.push_back(instance_.bids[i].user_id);
    }
    return solution;
  }

 private:
  void Visit(std::size_t i, double value) {
    for (std::size_t j = 0; j < residual_.size(); ++j) {
      if (residual_[j] > remaining_capable_[i][j]) return;
    }
    if (found_ && value + negative_tail_[i] >= best_) return;
    if (i == cost_.size()) {
      found_ = true;
      best_ = value;
      best_chosen_ = chosen_;
      return;
    }
    const auto& cap = instance_.bids[i].declared_capability;
    std::vector<TaskId> touched;
    for (TaskId j : cap) {
      if (residual_[j] > 0) {
        --residual_[j];
        touched.push_back(j);
      }
    }
    chosen_[i] = true;
    Visit(i + 1, value + cost_[i]);
    chosen_[i] = false;
    for (TaskId j : touched) ++residual_[j];
    Visit(i + 1, value);
  }

  const auction::SlotInstance& instance_;
  std::vector<double> cost_;
  ResidualMap residual_;
  std::vector<bool> chosen_;
  std::vector<std::vector<int>> remaining_capable_;
  std::vector<double> negative_tail_;
  bool found_ = false;
  double best_ = 0.0;
  std::vector<bool> best_chosen_;
};

}  // namespace

double QueueShift(const auction::SlotInstance& instance) {
  double m = 0.0;
  for (double q : instance.queues) m = std::max(m, q / instance.config.gamma);
  return m;
}

double Harmonic(long d) {
  double h = 0.0;
  for (long i = 1; i <= d; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

CoverSolution BruteForceOtpm(const auction::SlotInstance& instance) {
  return Enumerate(instance, 0.0);
}

CoverSolution BruteForceOtcm(const auction::SlotInstance& instance) {
  return Enumerate(instance, QueueShift(instance));
}

CoverSolution BranchAndBoundOtpm(const auction::SlotInstance& instance) {
  instance.Validate();
  CheckSize(instance);
  return BranchAndBound(instance).Solve();
}

BoundCertificate CertifyBound(const auction::SlotInstance& instance) {
  const SlotOutcome outcome = auction::SelectAndPay(instance);
  if (!outcome.monopolists.empty()) {
    Fail(ErrorCode::kDegenerateRatio,
         "a winner was paid the reserve price and has no price setter");
  }

  BoundCertificate cert;
  cert.n = static_cast<long>(instance.bids.size());
  cert.m = QueueShift(instance);
  cert.p_star = BruteForceOtpm(instance).value;
  cert.m_star = BruteForceOtcm(instance).value;
  cert.mechanism_payment = TotalPayment(outcome);
  for (const Bid& bid : instance.bids) {
    cert.theta = std::max<long>(cert.theta,
                                static_cast<long>(bid.declared_capability.size()));
  }
  for (const Task& task : instance.tasks) cert.d += task.requirement;
  cert.harmonic_d = Harmonic(cert.d);

  const EngineConfig& config = instance.config;
  for (UserId winner : outcome.winners) {
    const int i = instance.IndexOf(winner);
    cert.shifted_winner_cost +=
        auction::VirtualCost(instance.bids[i], instance.queues[i], config) +
        cert.m;
  }
  cert.greedy_bound = 2.0 * cert.theta * cert.harmonic_d * cert.m_star;

  if (!outcome.winners.empty()) {
    double max_setter = -std::numeric_limits<double>::infinity();
    double min_setter_shifted = std::numeric_limits<double>::infinity();
    double min_winner_shifted = std::numeric_limits<double>::infinity();
    for (UserId winner : outcome.winners) {
      auto it = outcome.price_setter.find(winner);
      if (it == outcome.price_setter.end()) {
        Fail(ErrorCode::kDegenerateRatio, "a winner has no price setter");
      }
      const int i = instance.IndexOf(winner);
      const int k = instance.IndexOf(it->second);
      const double v =
          auction::VirtualCost(instance.bids[k], instance.queues[k], config);
      max_setter = std::max(max_setter, v);
      min_setter_shifted = std::min(min_setter_shifted, v + cert.m);
      min_winner_shifted = std::min(
          min_winner_shifted,
          auction::VirtualCost(instance.bids[i], instance.queues[i], config) +
              cert.m);
    }
    if (!(min_winner_shifted > 0.0) || !(min_setter_shifted > 0.0)) {
      Fail(ErrorCode::kDegenerateRatio, "minimum shifted cost is not positive");
    }
    cert.delta_ratio = max_setter / min_winner_shifted;
    cert.setter_delta_ratio = max_setter / min_setter_shifted;
  }
  const double scale = 2.0 * static_cast<double>(cert.theta) *
                       static_cast<double>(cert.d) * cert.harmonic_d *
                       (cert.p_star + cert.m * static_cast<double>(cert.n));
  cert.bound_value = cert.delta_ratio * scale;
  const double setter_bound = cert.setter_delta_ratio * scale;

  const auto slack = [](double rhs) { return 1e-9 * std::max(1.0, std::abs(rhs)); };
  const double lemma_rhs = cert.p_star + cert.m * static_cast<double>(cert.n);
  cert.lemma_holds = cert.m_star <= lemma_rhs + slack(lemma_rhs);
  cert.greedy_bound_holds =
      cert.shifted_winner_cost <= cert.greedy_bound + slack(cert.greedy_bound);
  cert.passed =
      cert.mechanism_payment <= cert.bound_value + slack(cert.bound_value);
  cert.setter_bound_holds =
      cert.mechanism_payment <= setter_bound + slack(setter_bound);
  return cert;
}

std::vector<TruthViolation> TruthfulnessProbe(
    const auction::SlotInstance& instance, UserId user_id,
    std::span<const Bid> misreports, const Mechanism& mechanism,
    double tolerance) {
  const Mechanism run = mechanism ? mechanism : Mechanism(auction::SelectAndPay);
  const int index = instance.IndexOf(user_id);
  if (index < 0) {
    Fail(ErrorCode::kInvalidParameter, "probed user is not a bidder");
  }
  const Bid& truth = instance.bids[index];
  const double true_cost = truth.DeclaredCost(instance.config.epsilon);

  const auto utility_with = [&](const Bid& bid) {
    auction::SlotInstance probe = instance;
    probe.bids[index] = bid;
    probe.bids[index].user_id = user_id;
    try {
      const SlotOutcome outcome = run(probe);
      if (!outcome.IsWinner(user_id)) return 0.0;
      return outcome.PaymentOf(user_id) - true_cost;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInfeasible) return 0.0;
      throw;
    }
  };

  const double truthful = utility_with(truth);
  std::vector<TruthViolation> violations;
  for (const Bid& misreport : misreports) {
    const double u = utility_with(misreport);
    if (u > truthful + tolerance) {
      violations.push_back({misreport, truthful, u});
    }
  }
  return violations;
}

std::vector<Bid> SampleMisreports(const Bid& truth, int count, Rng& rng) {
  std::vector<Bid> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    Bid bid = truth;
    bid.sensing_bid = rng.Uniform(0.0, 2.0 * truth.sensing_bid + 1.0);
    bid.unit_privacy_bid = rng.Uniform(0.0, 2.0 * truth.unit_privacy_bid + 1.0);
    if (s % 2 == 1 && !truth.declared_capability.empty()) {
      std::vector<TaskId> subset;
      while (subset.empty()) {
        subset.clear();
        for (TaskId j : truth.declared_capability) {
          if (rng.Uniform01() < 0.5) subset.push_back(j);
        }
      }
      bid.declared_capability = std::move(subset);
    }
    out.push_back(std::move(bid));
  }
  return out;
}

auction::SlotInstance RandomInstance(const InstanceOptions& options,
                                     Rng& rng) {
  const int n = static_cast<int>(rng.UniformInt(options.min_n, options.max_n));
  const int k = static_cast<int>(rng.UniformInt(options.min_k, options.max_k));

  auction::SlotInstance instance;
  instance.config.epsilon = rng.Uniform(options.epsilon_lo, options.epsilon_hi);
  instance.config.zeta = 1.0;
  instance.config.gamma = options.gamma;
  instance.config.participation_rate = 0.2;
  instance.config.reserve_price =
      10.0 * options.cost_hi * (1.0 + options.epsilon_hi);

  std::vector<int> capable;
  do {
    instance.bids.clear();
    capable.assign(k, 0);
    for (int i = 0; i < n; ++i) {
      Bid bid;
      bid.user_id = static_cast<UserId>(i);
      bid.sensing_bid = rng.Uniform(options.cost_lo, options.cost_hi);
      bid.unit_privacy_bid = rng.Uniform(options.cost_lo, options.cost_hi);
      while (bid.declared_capability.empty()) {
        for (int j = 0; j < k; ++j) {
          if (rng.Uniform01() < 0.5) {
            bid.declared_capability.push_back(static_cast<TaskId>(j));
          }
        }
      }
      for (TaskId j : bid.declared_capability) ++capable[j];
      instance.bids.push_back(std::move(bid));
    }
  } while (*std::min_element(capable.begin(), capable.end()) < 2);

  for (int j = 0; j < k; ++j) {
    Task task;
    task.id = static_cast<TaskId>(j);
    task.requirement = static_cast<int>(rng.UniformInt(
        1, std::min(options.max_requirement, capable[j] - 1)));
    instance.tasks.push_back(task);
  }
  for (int i = 0; i < n; ++i) {
    instance.queues.push_back(rng.Uniform(0.0, options.max_queue));
  }
  return instance;
}

}  // namespace lepa::oracle
