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

#ifndef LEPA_SIMULATION_HPP_
#define LEPA_SIMULATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lepa/core_model.hpp"
#include "lepa/random.hpp"

namespace lepa::sim {

enum class Mechanism { kLepa, kStatic, kCompulsory };
enum class Setting { kI, kII, kIII, kCustom };

const char* MechanismName(Mechanism m);
const char* SettingName(Setting s);
std::optional<Mechanism> ParseMechanism(const std::string& name);
std::optional<Setting> ParseSetting(const std::string& name);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct ScenarioConfig {
  Setting setting = Setting::kI;
  int n = 100;
  int k = 10;
  Range alpha{1.0, 2.0};
  Range delta{0.1, 0.2};
  Range cost{1.0, 2.0};
  IntRange capability{5, 10};
  double epsilon = 1.0;
  double zeta = 2.5;
  double gamma = 1.0;
  double participation_rate = 0.2;
  int horizon = 100;
  int dropout_window = 20;  // 0 disables dropout
  std::uint64_t seed = 1;
  Mechanism mechanism = Mechanism::kLepa;
  // Draw fresh costs for every user in every slot instead of once.
  bool redraw_costs = false;
  // Downgrade the participation feasibility check to a warning.
  bool allow_infeasible_participation = false;
  // 0 selects the default: 10 x the largest possible declared cost.
  double reserve_price = 0.0;
  // Misreports probed per slot against one random user (lepa/static only).
  int probe_misreports = 0;

  // Table 1 ranges; settings II and III start at n = 100 / epsilon = 1 and
  // are varied by the sweep. Setting III uses zeta = 0.05.
  static ScenarioConfig Preset(Setting setting);
  void Validate() const;
  double ResolvedReservePrice() const;
  EngineConfig Engine() const;
};

struct ParticipationCheck {
  int max_requirement = 0;
  long total_requirement = 0;
  int min_capability = 0;
  // max(max_j r_j, ceil(sum_j r_j / min_i |Gamma_i|)): the winners a slot
  // needs when every winner covers only the smallest capability set.
  double winner_estimate = 0.0;
  // D n <= 0.8 * winner_estimate.
  bool feasible = false;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<User> users;
  std::vector<Task> tasks;
  ParticipationCheck participation;
  std::vector<std::string> warnings;
};

ParticipationCheck CheckParticipation(const ScenarioConfig& config,
                                      const std::vector<User>& users,
                                      const std::vector<Task>& tasks);

// Draws tasks and users uniformly from the configured ranges. Throws
// kInfeasible when a task cannot be served by at least r_j + 1 users, when
// the total capability is below twice the total requirement, or when the
// participation check fails and allow_infeasible_participation is off.
Scenario GenerateScenario(const ScenarioConfig& config);

// Redraws both cost components of every user within the configured range.
void RedrawCosts(std::vector<User>& users, const ScenarioConfig& config,
                 Rng& rng);

struct SlotRecord {
  int slot = 0;
  double total_payment = 0.0;
  double cum_payment = 0.0;
  int alive = 0;
  std::vector<UserId> winners;  // ascending
  double max_queue = 0.0;
  std::vector<double> queues;  // per user, after the slot (0 once departed)
};

struct ExperimentTrace {
  ScenarioConfig config;
  std::vector<SlotRecord> slots;
  std::vector<int> selection_count;
  std::vector<double> selection_frequency;  // selections / slots run
  std::vector<bool> alive_final;
  std::vector<int> departure_slot;  // -1 while alive
  bool terminated = false;
  int termination_slot = -1;
  std::string termination_reason;
  int monopolist_events = 0;
  // Smallest p_i - c_i over all winners of all slots, and the number of
  // winners paid below cost by more than 1e-12.
  double min_ir_slack = 0.0;
  long ir_violations = 0;
  long winners_total = 0;
  long probes = 0;
  long probe_violations = 0;
  std::vector<std::string> warnings;

  double AveragePayment() const;
  double CumulativePayment() const;
  int FinalAlive() const;
};

ExperimentTrace RunExperiment(const ScenarioConfig& config);
ExperimentTrace RunExperiment(const Scenario& scenario);

enum class SweepParameter { kUsers, kEpsilon };

struct SweepPoint {
  double grid_value = 0.0;
  double mean_avg_payment = 0.0;
  double std_avg_payment = 0.0;
  int replications = 0;
  std::vector<double> avg_payments;
  double min_ir_slack = 0.0;
  long ir_violations = 0;
};

// For every grid value and replication r, runs the experiment with seed
// config.seed + r and records the time-averaged total payment. Replication
// 0 of a grid point reproduces RunExperiment(config) with that value.
std::vector<SweepPoint> Sweep(const ScenarioConfig& config,
                              SweepParameter parameter,
                              const std::vector<double>& grid,
                              int replications);

// Linear-regression slope of max_queue over the last `window` slots.
double MaxQueueTrend(const ExperimentTrace& trace, int window);

}  // namespace lepa::sim

#endif  // LEPA_SIMULATION_HPP_
