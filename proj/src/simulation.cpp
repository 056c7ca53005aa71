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

#include "lepa/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <sstream>

#include "lepa/auction.hpp"
#include "lepa/baselines.hpp"
#include "lepa/error.hpp"
#include "lepa/oracle.hpp"

namespace lepa::sim {
namespace {

// Independent random streams of one replication.
enum Stream : std::uint64_t {
  kScenarioStream = 0,
  kCostStream = 1,
  kProbeStream = 2,
};

void CheckRange(const Range& r, const char* name, bool positive) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi ||
      (positive && !(r.lo > 0.0)) || r.lo < 0.0) {
    Fail(ErrorCode::kInvalidParameter,
         std::string("invalid ") + name + " range");
  }
}

std::string JoinTasks(const std::vector<TaskId>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i];
  return out.str();
}

}  // namespace

const char* MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kLepa:
      return "lepa";
    case Mechanism::kStatic:
      return "static";
    case Mechanism::kCompulsory:
      return "compulsory";
  }
  return "lepa";
}

const char* SettingName(Setting s) {
  switch (s) {
    case Setting::kI:
      return "I";
    case Setting::kII:
      return "II";
    case Setting::kIII:
      return "III";
    case Setting::kCustom:
      return "custom";
  }
  return "custom";
}

std::optional<Mechanism> ParseMechanism(const std::string& name) {
  if (name == "lepa") return Mechanism::kLepa;
  if (name == "static") return Mechanism::kStatic;
  if (name == "compulsory") return Mechanism::kCompulsory;
  return std::nullopt;
}

std::optional<Setting> ParseSetting(const std::string& name) {
  if (name == "I") return Setting::kI;
  if (name == "II") return Setting::kII;
  if (name == "III") return Setting::kIII;
  if (name == "custom") return Setting::kCustom;
  return std::nullopt;
}

ScenarioConfig ScenarioConfig::Preset(Setting setting) {
  ScenarioConfig config;
  config.setting = setting;
  if (setting == Setting::kIII) {
    // At zeta = 2.5 and epsilon = 0.5 single tasks would need more winners
    // than there are users; 0.05 keeps the whole epsilon range coverable.
    config.zeta = 0.05;
  }
  return config;
}

void ScenarioConfig::Validate() const {
  if (n < 1) Fail(ErrorCode::kInvalidParameter, "n must be >= 1");
  if (k < 1) Fail(ErrorCode::kInvalidParameter, "k must be >= 1");
  CheckRange(alpha, "alpha", true);
  CheckRange(delta, "delta", true);
  if (!(delta.hi < 1.0)) {
    Fail(ErrorCode::kInvalidParameter, "delta range must lie in (0, 1)");
  }
  CheckRange(cost, "cost", false);
  if (capability.lo < 1 || capability.lo > capability.hi) {
    Fail(ErrorCode::kInvalidParameter, "invalid capability range");
  }
  if (capability.lo > k) {
    Fail(ErrorCode::kInvalidParameter,
         "capability range starts above the task count");
  }
  if (horizon < 1) Fail(ErrorCode::kInvalidParameter, "horizon must be >= 1");
  if (dropout_window < 0) {
    Fail(ErrorCode::kInvalidParameter, "dropout window must be >= 0");
  }
  if (probe_misreports < 0) {
    Fail(ErrorCode::kInvalidParameter, "probe count must be >= 0");
  }
  if (reserve_price < 0.0 || !std::isfinite(reserve_price)) {
    Fail(ErrorCode::kInvalidParameter, "reserve price must be >= 0");
  }
  Engine().Validate();
}

double ScenarioConfig::ResolvedReservePrice() const {
  if (reserve_price > 0.0) return reserve_price;
  return 10.0 * std::max(cost.hi * (1.0 + epsilon), 1e-9);
}

EngineConfig ScenarioConfig::Engine() const {
  EngineConfig engine;
  engine.epsilon = epsilon;
  engine.zeta = zeta;
  engine.gamma = gamma;
  engine.participation_rate = participation_rate;
  engine.reserve_price = ResolvedReservePrice();
  return engine;
}

ParticipationCheck CheckParticipation(const ScenarioConfig& config,
                                      const std::vector<User>& users,
                                      const std::vector<Task>& tasks) {
  ParticipationCheck check;
  for (const Task& task : tasks) {
    check.max_requirement = std::max(check.max_requirement, task.requirement);
    check.total_requirement += task.requirement;
  }
  std::size_t min_capability = 0;
  for (const User& user : users) {
    if (min_capability == 0 || user.capability.size() < min_capability) {
      min_capability = user.capability.size();
    }
  }
  check.min_capability = static_cast<int>(min_capability);
  const double by_volume =
      min_capability > 0
          ? std::ceil(static_cast<double>(check.total_requirement) /
                      static_cast<double>(min_capability))
          : 0.0;
  check.winner_estimate =
      std::max(static_cast<double>(check.max_requirement), by_volume);
  check.feasible = config.participation_rate * config.n <=
                   0.8 * check.winner_estimate;
  return check;
}

Scenario GenerateScenario(const ScenarioConfig& config) {
  config.Validate();
  Scenario scenario;
  scenario.config = config;
  Rng rng(MixSeed(config.seed, kScenarioStream));

  for (int j = 0; j < config.k; ++j) {
    AccuracySpec spec;
    spec.alpha = rng.Uniform(config.alpha.lo, config.alpha.hi);
    spec.delta = rng.Uniform(config.delta.lo, config.delta.hi);
    scenario.tasks.push_back(
        MakeTask(static_cast<TaskId>(j), spec, config.epsilon, config.zeta));
  }

  std::vector<TaskId> pool(config.k);
  std::iota(pool.begin(), pool.end(), 0u);
  const int cap_hi = std::min(config.capability.hi, config.k);
  for (int i = 0; i < config.n; ++i) {
    User user;
    user.id = static_cast<UserId>(i);
    user.true_sensing_cost = rng.Uniform(config.cost.lo, config.cost.hi);
    user.true_unit_privacy_cost = rng.Uniform(config.cost.lo, config.cost.hi);
    const int size =
        static_cast<int>(rng.UniformInt(config.capability.lo, cap_hi));
    // Partial Fisher-Yates: the first `size` entries are a uniform subset.
    for (int t = 0; t < size; ++t) {
      const auto pick = rng.UniformInt(t, config.k - 1);
      std::swap(pool[t], pool[pick]);
    }
    user.capability.assign(pool.begin(), pool.begin() + size);
    std::sort(user.capability.begin(), user.capability.end());
    scenario.users.push_back(std::move(user));
  }

  std::vector<int> capable(config.k, 0);
  long capability_total = 0;
  for (const User& user : scenario.users) {
    for (TaskId j : user.capability) ++capable[j];
    capability_total += user.capability.size();
  }
  std::vector<TaskId> thin;
  long total_requirement = 0;
  for (const Task& task : scenario.tasks) {
    total_requirement += task.requirement;
    if (capable[task.id] < task.requirement + 1) thin.push_back(task.id);
  }
  if (!thin.empty()) {
    Fail(ErrorCode::kInfeasible,
         "tasks without a spare capable user: " + JoinTasks(thin));
  }
  if (capability_total < 2 * total_requirement) {
    std::ostringstream msg;
    msg << "total capability " << capability_total
        << " is below twice the total requirement " << total_requirement;
    Fail(ErrorCode::kInfeasible, msg.str());
  }

  scenario.participation =
      CheckParticipation(config, scenario.users, scenario.tasks);
  if (!scenario.participation.feasible) {
    std::ostringstream msg;
    msg << "participation rate " << config.participation_rate << " with n = "
        << config.n << " exceeds 0.8 x the estimated winners per slot ("
        << scenario.participation.winner_estimate << ")";
    if (!config.allow_infeasible_participation) {
      Fail(ErrorCode::kInfeasible, msg.str());
    }
    scenario.warnings.push_back(msg.str());
  }
  return scenario;
}

void RedrawCosts(std::vector<User>& users, const ScenarioConfig& config,
                 Rng& rng) {
  for (User& user : users) {
    user.true_sensing_cost = rng.Uniform(config.cost.lo, config.cost.hi);
    user.true_unit_privacy_cost = rng.Uniform(config.cost.lo, config.cost.hi);
  }
}

double ExperimentTrace::AveragePayment() const {
  if (slots.empty()) return 0.0;
  return slots.back().cum_payment / static_cast<double>(slots.size());
}

double ExperimentTrace::CumulativePayment() const {
  return slots.empty() ? 0.0 : slots.back().cum_payment;
}

int ExperimentTrace::FinalAlive() const {
  return slots.empty() ? config.n : slots.back().alive;
}

ExperimentTrace RunExperiment(const ScenarioConfig& config) {
  return RunExperiment(GenerateScenario(config));
}

ExperimentTrace RunExperiment(const Scenario& scenario) {
  const ScenarioConfig& config = scenario.config;
  const EngineConfig engine = config.Engine();
  std::vector<User> users = scenario.users;
  const int n = static_cast<int>(users.size());

  ExperimentTrace trace;
  trace.config = config;
  trace.warnings = scenario.warnings;
  trace.selection_count.assign(n, 0);
  trace.departure_slot.assign(n, -1);
  trace.min_ir_slack = std::numeric_limits<double>::infinity();

  Rng cost_rng(MixSeed(config.seed, kCostStream));
  Rng probe_rng(MixSeed(config.seed, kProbeStream));
  auto compulsory = baselines::CompulsoryState::ForRate(config.participation_rate);
  double cumulative = 0.0;

  for (int t = 0; t < config.horizon; ++t) {
    if (config.redraw_costs) RedrawCosts(users, config, cost_rng);

    auction::SlotInstance instance;
    instance.config = engine;
    instance.tasks = scenario.tasks;
    std::vector<int> bidder;  // positions of alive users
    for (int i = 0; i < n; ++i) {
      if (!users[i].alive) continue;
      bidder.push_back(i);
      instance.bids.push_back(TruthfulBid(users[i]));
      instance.queues.push_back(users[i].queue);
    }
    const auto missing = auction::UncoverableTasks(instance);
    if (!missing.empty()) {
      trace.terminated = true;
      trace.termination_slot = t;
      trace.termination_reason =
          "remaining users cannot cover tasks: " + JoinTasks(missing);
      break;
    }

    SlotOutcome outcome;
    switch (config.mechanism) {
      case Mechanism::kLepa:
        outcome = auction::RunSlot(instance);
        break;
      case Mechanism::kStatic:
        outcome = baselines::StaticSlot(instance);
        break;
      case Mechanism::kCompulsory:
        outcome = baselines::CompulsorySlot(instance, compulsory);
        break;
    }

    if (config.probe_misreports > 0 &&
        config.mechanism != Mechanism::kCompulsory) {
      const int pick = static_cast<int>(
          probe_rng.UniformInt(0, static_cast<std::int64_t>(bidder.size()) - 1));
      const Bid& truth = instance.bids[pick];
      const auto misreports =
          oracle::SampleMisreports(truth, config.probe_misreports, probe_rng);
      const oracle::Mechanism mech =
          config.mechanism == Mechanism::kStatic
              ? oracle::Mechanism(baselines::StaticSlot)
              : oracle::Mechanism(auction::SelectAndPay);
      trace.probes += config.probe_misreports;
      trace.probe_violations += static_cast<long>(
          oracle::TruthfulnessProbe(instance, truth.user_id, misreports, mech)
              .size());
    }

    trace.monopolist_events += static_cast<int>(outcome.monopolists.size());
    SlotRecord record;
    record.slot = t;
    record.total_payment = TotalPayment(outcome);
    cumulative += record.total_payment;
    record.cum_payment = cumulative;
    for (int i : bidder) {
      User& user = users[i];
      const bool selected = outcome.IsWinner(user.id);
      user.queue = outcome.queues_after.at(user.id);
      if (selected) {
        ++trace.selection_count[i];
        user.consecutive_unselected = 0;
        const double slack =
            outcome.PaymentOf(user.id) - user.TrueCost(engine.epsilon);
        trace.min_ir_slack = std::min(trace.min_ir_slack, slack);
        if (slack < -1e-12) ++trace.ir_violations;
        ++trace.winners_total;
        record.winners.push_back(user.id);
      } else {
        ++user.consecutive_unselected;
      }
      if (config.dropout_window > 0 &&
          user.consecutive_unselected >= config.dropout_window) {
        user.alive = false;
        user.queue = 0.0;
        trace.departure_slot[i] = t;
      }
    }
    std::sort(record.winners.begin(), record.winners.end());
    record.queues.reserve(n);
    for (const User& user : users) {
      record.queues.push_back(user.queue);
      if (user.alive) {
        ++record.alive;
        record.max_queue = std::max(record.max_queue, user.queue);
      }
    }
    trace.slots.push_back(std::move(record));
  }

  if (trace.winners_total == 0) trace.min_ir_slack = 0.0;
  const double slots_run = static_cast<double>(trace.slots.size());
  for (int i = 0; i < n; ++i) {
    trace.alive_final.push_back(users[i].alive);
    trace.selection_frequency.push_back(
        slots_run > 0 ? trace.selection_count[i] / slots_run : 0.0);
  }
  return trace;
}

std::vector<SweepPoint> Sweep(const ScenarioConfig& config,
                              SweepParameter parameter,
                              const std::vector<double>& grid,
                              int replications) {
  if (replications < 1) {
    Fail(ErrorCode::kInvalidParameter, "replications must be >= 1");
  }
  if (grid.empty()) Fail(ErrorCode::kInvalidParameter, "empty sweep grid");
  std::vector<SweepPoint> points;
  for (double value : grid) {
    SweepPoint point;
    point.grid_value = value;
    point.replications = replications;
    point.min_ir_slack = std::numeric_limits<double>::infinity();
    for (int r = 0; r < replications; ++r) {
      ScenarioConfig run = config;
      if (parameter == SweepParameter::kUsers) {
        run.n = static_cast<int>(std::lround(value));
      } else {
        run.epsilon = value;
      }
      run.seed = config.seed + static_cast<std::uint64_t>(r);
      const ExperimentTrace trace = RunExperiment(run);
      point.avg_payments.push_back(trace.AveragePayment());
      point.min_ir_slack = std::min(point.min_ir_slack, trace.min_ir_slack);
      point.ir_violations += trace.ir_violations;
    }
    const double mean =
        std::accumulate(point.avg_payments.begin(), point.avg_payments.end(),
                        0.0) /
        replications;
    double ss = 0.0;
    for (double x : point.avg_payments) ss += (x - mean) * (x - mean);
    point.mean_avg_payment = mean;
    point.std_avg_payment =
        replications > 1 ? std::sqrt(ss / (replications - 1)) : 0.0;
    points.push_back(std::move(point));
  }
  return points;
}

double MaxQueueTrend(const ExperimentTrace& trace, int window) {
  const int total = static_cast<int>(trace.slots.size());
  const int w = std::min(window, total);
  if (w < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < w; ++i) {
    const double x = i;
    const double y = trace.slots[total - w + i].max_queue;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = w * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (w * sxy - sx * sy) / denom;
}

}  // namespace lepa::sim
