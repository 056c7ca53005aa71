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

#include "lepa/lepa.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "lepa/auction.hpp"
#include "lepa/baselines.hpp"
#include "lepa/error.hpp"
#include "lepa/io.hpp"
#include "lepa/simulation.hpp"
#include "lepa/suites.hpp"

struct lepa_scenario {
  lepa::sim::ScenarioConfig config;
  std::string json;
};

struct lepa_trace {
  lepa::sim::Scenario scenario;
  lepa::sim::ExperimentTrace trace;
};

struct lepa_summary {
  std::vector<lepa::sim::SweepPoint> points;
};

namespace {

thread_local std::string g_last_error;

lepa_status StatusOf(lepa::ErrorCode code) {
  switch (code) {
    case lepa::ErrorCode::kInvalidParameter:
      return LEPA_ERR_INVALID_ARGUMENT;
    case lepa::ErrorCode::kInfeasible:
      return LEPA_ERR_INFEASIBLE;
    case lepa::ErrorCode::kEmptyAggregation:
      return LEPA_ERR_EMPTY_AGGREGATION;
    case lepa::ErrorCode::kPrecondition:
      return LEPA_ERR_PRECONDITION;
    case lepa::ErrorCode::kSizeLimit:
      return LEPA_ERR_SIZE_LIMIT;
    case lepa::ErrorCode::kDegenerateRatio:
      return LEPA_ERR_DEGENERATE_RATIO;
    case lepa::ErrorCode::kIo:
      return LEPA_ERR_IO;
  }
  return LEPA_ERR_INTERNAL;
}

lepa_status Reject(lepa_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
lepa_status Guard(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return LEPA_OK;
  } catch (const lepa::Error& e) {
    return Reject(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Reject(LEPA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Reject(LEPA_ERR_INTERNAL, e.what());
  }
}

int ToInt(const char* key, double value) {
  if (!std::isfinite(value) || value != std::floor(value) ||
      std::fabs(value) > 2e9) {
    lepa::Fail(lepa::ErrorCode::kInvalidParameter,
               std::string(key) + " must be an integer");
  }
  return static_cast<int>(value);
}

bool ToBool(const char* key, double value) {
  if (value != 0.0 && value != 1.0) {
    lepa::Fail(lepa::ErrorCode::kInvalidParameter,
               std::string(key) + " must be 0 or 1");
  }
  return value == 1.0;
}

void WriteStream(const std::string& path, const std::string& contents) {
  lepa::io::WriteTextFile(path, contents);
}

}  // namespace

extern "C" {

const char* lepa_version(void) { return "0.1.0"; }

const char* lepa_status_name(lepa_status status) {
  switch (status) {
    case LEPA_OK:
      return "ok";
    case LEPA_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case LEPA_ERR_INFEASIBLE:
      return "infeasible";
    case LEPA_ERR_EMPTY_AGGREGATION:
      return "empty aggregation";
    case LEPA_ERR_PRECONDITION:
      return "precondition violated";
    case LEPA_ERR_SIZE_LIMIT:
      return "size limit exceeded";
    case LEPA_ERR_DEGENERATE_RATIO:
      return "degenerate ratio";
    case LEPA_ERR_IO:
      return "i/o error";
    case LEPA_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* lepa_last_error(void) { return g_last_error.c_str(); }

lepa_status lepa_scenario_create(const char* setting, lepa_scenario** out) {
  if (out == nullptr) return Reject(LEPA_ERR_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  const std::string name = setting ? setting : "I";
  const auto parsed = lepa::sim::ParseSetting(name);
  if (!parsed) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "unknown setting '" + name + "'");
  }
  return Guard([&] {
    auto* scenario = new lepa_scenario;
    scenario->config = lepa::sim::ScenarioConfig::Preset(*parsed);
    *out = scenario;
  });
}

void lepa_scenario_destroy(lepa_scenario* scenario) { delete scenario; }

lepa_status lepa_scenario_set_number(lepa_scenario* scenario, const char* key,
                                     double value) {
  if (scenario == nullptr || key == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    lepa::sim::ScenarioConfig& c = scenario->config;
    const std::string k = key;
    if (k == "n") {
      c.n = ToInt(key, value);
    } else if (k == "k") {
      c.k = ToInt(key, value);
    } else if (k == "epsilon") {
      c.epsilon = value;
    } else if (k == "zeta") {
      c.zeta = value;
    } else if (k == "gamma") {
      c.gamma = value;
    } else if (k == "participation_rate") {
      c.participation_rate = value;
    } else if (k == "horizon") {
      c.horizon = ToInt(key, value);
    } else if (k == "dropout_window") {
      c.dropout_window = ToInt(key, value);
    } else if (k == "seed") {
      if (!(value >= 0.0) || value != std::floor(value) || value > 9e15) {
        lepa::Fail(lepa::ErrorCode::kInvalidParameter,
                   "seed must be a nonnegative integer");
      }
      c.seed = static_cast<std::uint64_t>(value);
    } else if (k == "reserve_price") {
      c.reserve_price = value;
    } else if (k == "probe_misreports") {
      c.probe_misreports = ToInt(key, value);
    } else if (k == "redraw_costs") {
      c.redraw_costs = ToBool(key, value);
    } else if (k == "allow_infeasible_participation") {
      c.allow_infeasible_participation = ToBool(key, value);
    } else {
      lepa::Fail(lepa::ErrorCode::kInvalidParameter,
                 "unknown numeric key '" + k + "'");
    }
  });
}

lepa_status lepa_scenario_set_seed(lepa_scenario* scenario, uint64_t seed) {
  if (scenario == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  scenario->config.seed = seed;
  g_last_error.clear();
  return LEPA_OK;
}

lepa_status lepa_scenario_set_string(lepa_scenario* scenario, const char* key,
                                     const char* value) {
  if (scenario == nullptr || key == nullptr || value == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    nlohmann::json doc;
    doc[key] = value;
    scenario->config = lepa::io::ApplyConfigJson(scenario->config, doc);
  });
}

lepa_status lepa_scenario_apply_json(lepa_scenario* scenario,
                                     const char* json_text) {
  if (scenario == nullptr || json_text == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      lepa::Fail(lepa::ErrorCode::kInvalidParameter,
                 std::string("invalid JSON: ") + e.what());
    }
    scenario->config = lepa::io::ApplyConfigJson(scenario->config, doc);
  });
}

lepa_status lepa_scenario_load_file(lepa_scenario* scenario,
                                    const char* path) {
  if (scenario == nullptr || path == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    scenario->config = lepa::io::LoadConfigFile(scenario->config, path);
  });
}

lepa_status lepa_scenario_validate(const lepa_scenario* scenario) {
  if (scenario == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] { scenario->config.Validate(); });
}

lepa_status lepa_scenario_to_json(lepa_scenario* scenario,
                                  const char** json_text) {
  if (scenario == nullptr || json_text == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    scenario->json = lepa::io::ConfigToJson(scenario->config).dump(2);
    *json_text = scenario->json.c_str();
  });
}

lepa_status lepa_run(const lepa_scenario* scenario, lepa_trace** out) {
  if (scenario == nullptr || out == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] {
    auto result = std::make_unique<lepa_trace>();
    result->scenario = lepa::sim::GenerateScenario(scenario->config);
    result->trace = lepa::sim::RunExperiment(result->scenario);
    *out = result.release();
  });
}

void lepa_trace_destroy(lepa_trace* trace) { delete trace; }

size_t lepa_trace_slot_count(const lepa_trace* trace) {
  return trace ? trace->trace.slots.size() : 0;
}

size_t lepa_trace_user_count(const lepa_trace* trace) {
  return trace ? trace->trace.selection_count.size() : 0;
}

lepa_status lepa_trace_slot(const lepa_trace* trace, size_t slot,
                            double* total_payment, double* cum_payment,
                            int* alive, size_t* winners, double* max_queue) {
  if (trace == nullptr) return Reject(LEPA_ERR_INVALID_ARGUMENT, "null trace");
  if (slot >= trace->trace.slots.size()) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "slot index out of range");
  }
  const lepa::sim::SlotRecord& r = trace->trace.slots[slot];
  if (total_payment) *total_payment = r.total_payment;
  if (cum_payment) *cum_payment = r.cum_payment;
  if (alive) *alive = r.alive;
  if (winners) *winners = r.winners.size();
  if (max_queue) *max_queue = r.max_queue;
  g_last_error.clear();
  return LEPA_OK;
}

double lepa_trace_average_payment(const lepa_trace* trace) {
  return trace ? trace->trace.AveragePayment() : 0.0;
}

double lepa_trace_cumulative_payment(const lepa_trace* trace) {
  return trace ? trace->trace.CumulativePayment() : 0.0;
}

int lepa_trace_final_alive(const lepa_trace* trace) {
  return trace ? trace->trace.FinalAlive() : 0;
}

int lepa_trace_terminated(const lepa_trace* trace) {
  return trace && trace->trace.terminated ? 1 : 0;
}

lepa_status lepa_trace_selection_frequency(const lepa_trace* trace,
                                           size_t user, double* frequency,
                                           int* alive) {
  if (trace == nullptr) return Reject(LEPA_ERR_INVALID_ARGUMENT, "null trace");
  if (user >= trace->trace.selection_frequency.size()) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "user index out of range");
  }
  if (frequency) *frequency = trace->trace.selection_frequency[user];
  if (alive) *alive = trace->trace.alive_final[user] ? 1 : 0;
  g_last_error.clear();
  return LEPA_OK;
}

long lepa_trace_ir_violations(const lepa_trace* trace) {
  return trace ? trace->trace.ir_violations : 0;
}

long lepa_trace_probe_violations(const lepa_trace* trace) {
  return trace ? trace->trace.probe_violations : 0;
}

double lepa_trace_queue_trend(const lepa_trace* trace, int window) {
  return trace ? lepa::sim::MaxQueueTrend(trace->trace, window) : 0.0;
}

size_t lepa_trace_warning_count(const lepa_trace* trace) {
  return trace ? trace->trace.warnings.size() : 0;
}

const char* lepa_trace_warning(const lepa_trace* trace, size_t i) {
  if (trace == nullptr || i >= trace->trace.warnings.size()) return "";
  return trace->trace.warnings[i].c_str();
}

lepa_status lepa_trace_write_csv(const lepa_trace* trace, const char* path) {
  if (trace == nullptr || path == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::ostringstream out;
    lepa::io::WriteTraceCsv(trace->trace, out);
    WriteStream(path, out.str());
  });
}

lepa_status lepa_trace_write_scenario_json(const lepa_trace* trace,
                                           const char* path) {
  if (trace == nullptr || path == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    const auto doc = lepa::io::ScenarioToJson(trace->scenario, &trace->trace);
    WriteStream(path, doc.dump(2) + "\n");
  });
}

lepa_status lepa_sweep(const lepa_scenario* scenario, const char* parameter,
                       const double* grid, size_t grid_size, int replications,
                       lepa_summary** out) {
  if (scenario == nullptr || parameter == nullptr || out == nullptr ||
      (grid == nullptr && grid_size > 0)) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  const std::string name = parameter;
  lepa::sim::SweepParameter which;
  if (name == "n") {
    which = lepa::sim::SweepParameter::kUsers;
  } else if (name == "epsilon") {
    which = lepa::sim::SweepParameter::kEpsilon;
  } else {
    return Reject(LEPA_ERR_INVALID_ARGUMENT,
                  "sweep parameter must be 'n' or 'epsilon'");
  }
  return Guard([&] {
    auto result = std::make_unique<lepa_summary>();
    result->points =
        lepa::sim::Sweep(scenario->config, which,
                         std::vector<double>(grid, grid + grid_size),
                         replications);
    *out = result.release();
  });
}

void lepa_summary_destroy(lepa_summary* summary) { delete summary; }

size_t lepa_summary_size(const lepa_summary* summary) {
  return summary ? summary->points.size() : 0;
}

lepa_status lepa_summary_point(const lepa_summary* summary, size_t i,
                               double* grid_value, double* mean,
                               double* stddev, int* replications) {
  if (summary == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null summary");
  }
  if (i >= summary->points.size()) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "point index out of range");
  }
  const lepa::sim::SweepPoint& p = summary->points[i];
  if (grid_value) *grid_value = p.grid_value;
  if (mean) *mean = p.mean_avg_payment;
  if (stddev) *stddev = p.std_avg_payment;
  if (replications) *replications = p.replications;
  g_last_error.clear();
  return LEPA_OK;
}

long lepa_summary_ir_violations(const lepa_summary* summary) {
  if (summary == nullptr) return 0;
  long total = 0;
  for (const auto& p : summary->points) total += p.ir_violations;
  return total;
}

lepa_status lepa_summary_write_csv(const lepa_summary* summary,
                                   const char* path) {
  if (summary == nullptr || path == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::ostringstream out;
    lepa::io::WriteSummaryCsv(summary->points, out);
    WriteStream(path, out.str());
  });
}

lepa_status lepa_certify(uint64_t seed, int instances, int max_n, int max_k,
                         int misreports, const char* jsonl_path,
                         lepa_certify_report* report) {
  if (report == nullptr) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "report is null");
  }
  return Guard([&] {
    lepa::suites::CertifyOptions options;
    options.seed = seed;
    options.instances = instances;
    options.max_n = max_n;
    options.max_k = max_k;
    options.misreports = misreports;
    std::ofstream file;
    if (jsonl_path != nullptr) {
      file.open(jsonl_path, std::ios::binary);
      if (!file) {
        lepa::Fail(lepa::ErrorCode::kIo,
                   std::string("cannot write ") + jsonl_path);
      }
    }
    const auto r = lepa::suites::RunCertification(
        options, [&](const lepa::suites::CertificateRecord& record) {
          if (file.is_open()) {
            file << lepa::io::CertificateToJson(record).dump() << '\n';
          }
        });
    if (file.is_open() && !file) {
      lepa::Fail(lepa::ErrorCode::kIo,
                 std::string("failed while writing ") + jsonl_path);
    }
    report->instances = r.instances;
    report->certified = r.certified;
    report->degenerate = r.degenerate;
    report->bound_violations = r.bound_violations;
    report->lemma_violations = r.lemma_violations;
    report->greedy_bound_violations = r.greedy_bound_violations;
    report->truth_probes = r.truth_probes;
    report->truth_violations = r.truth_violations;
    report->ir_violations = r.ir_violations;
    report->passed = r.Passed() ? 1 : 0;
  });
}

lepa_status lepa_accuracy(double zeta, int64_t trials, uint64_t seed,
                          const char* csv_path, int* cells, int* failed) {
  return Guard([&] {
    const auto grid = lepa::suites::RunAccuracyGrid(zeta, trials, seed);
    int bad = 0;
    for (const auto& cell : grid) bad += cell.passed ? 0 : 1;
    if (csv_path != nullptr) {
      std::ostringstream out;
      lepa::io::WriteAccuracyCsv(grid, out);
      WriteStream(csv_path, out.str());
    }
    if (cells) *cells = static_cast<int>(grid.size());
    if (failed) *failed = bad;
  });
}

lepa_status lepa_run_slot(const char* mechanism, size_t n_bidders,
                          const double* sensing_bids,
                          const double* unit_privacy_bids,
                          const double* queues, const size_t* cap_offsets,
                          const uint32_t* cap_tasks, size_t n_tasks,
                          const int* requirements, double epsilon,
                          double gamma, double reserve_price, int* won,
                          double* payments) {
  if (mechanism == nullptr ||
      (n_bidders > 0 && (sensing_bids == nullptr ||
                         unit_privacy_bids == nullptr || queues == nullptr ||
                         won == nullptr || payments == nullptr)) ||
      cap_offsets == nullptr || (n_tasks > 0 && requirements == nullptr)) {
    return Reject(LEPA_ERR_INVALID_ARGUMENT, "null argument");
  }
  const std::string name = mechanism;
  if (name != "lepa" && name != "static") {
    return Reject(LEPA_ERR_INVALID_ARGUMENT,
                  "slot mechanism must be 'lepa' or 'static'");
  }
  return Guard([&] {
    lepa::auction::SlotInstance instance;
    instance.config.epsilon = epsilon;
    instance.config.gamma = gamma;
    instance.config.reserve_price = reserve_price;
    for (size_t j = 0; j < n_tasks; ++j) {
      lepa::Task task;
      task.id = static_cast<lepa::TaskId>(j);
      task.requirement = requirements[j];
      instance.tasks.push_back(task);
    }
    for (size_t i = 0; i < n_bidders; ++i) {
      if (cap_offsets[i + 1] < cap_offsets[i]) {
        lepa::Fail(lepa::ErrorCode::kInvalidParameter,
                   "capability offsets must be nondecreasing");
      }
      lepa::Bid bid;
      bid.user_id = static_cast<lepa::UserId>(i);
      bid.sensing_bid = sensing_bids[i];
      bid.unit_privacy_bid = unit_privacy_bids[i];
      bid.declared_capability.assign(cap_tasks + cap_offsets[i],
                                     cap_tasks + cap_offsets[i + 1]);
      instance.bids.push_back(std::move(bid));
      instance.queues.push_back(queues[i]);
    }
    const lepa::SlotOutcome outcome = name == "lepa"
                                          ? lepa::auction::SelectAndPay(instance)
                                          : lepa::baselines::StaticSlot(instance);
    for (size_t i = 0; i < n_bidders; ++i) {
      const auto id = static_cast<lepa::UserId>(i);
      won[i] = outcome.IsWinner(id) ? 1 : 0;
      payments[i] = outcome.PaymentOf(id);
    }
  });
}

}  // extern "C"
