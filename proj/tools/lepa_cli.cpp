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

// Command-line front end. Links only against the C interface.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lepa/lepa.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCertification = 3;

struct ScenarioFlags {
  std::string setting = "I";
  std::optional<std::string> mechanism;
  std::optional<unsigned long long> seed;
  std::optional<int> horizon;
  std::optional<int> users;
  std::optional<int> tasks;
  std::optional<double> gamma;
  std::optional<double> participation_rate;
  std::optional<double> epsilon;
  std::optional<double> zeta;
  std::optional<int> dropout_window;
  std::optional<int> probe;
  std::optional<double> reserve_price;
  std::string config;
  bool allow_infeasible = false;
  bool redraw_costs = false;
};

int ExitFor(lepa_status status) {
  switch (status) {
    case LEPA_OK:
      return kExitOk;
    case LEPA_ERR_INFEASIBLE:
      return kExitInfeasible;
    default:
      return kExitUsage;
  }
}

int Report(lepa_status status, const char* what) {
  std::fprintf(stderr, "lepa: %s failed (%s): %s\n", what,
               lepa_status_name(status), lepa_last_error());
  return ExitFor(status);
}

void AddScenarioFlags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--setting", f.setting, "Preset: I, II or III")
      ->check(CLI::IsMember({"I", "II", "III", "custom"}));
  app->add_option("--mechanism", f.mechanism, "lepa, static or compulsory")
      ->check(CLI::IsMember({"lepa", "static", "compulsory"}));
  app->add_option("--seed", f.seed, "Scenario seed");
  app->add_option("--horizon", f.horizon, "Number of slots T");
  app->add_option("--users", f.users, "Number of users n");
  app->add_option("--tasks", f.tasks, "Number of tasks k");
  app->add_option("--gamma", f.gamma, "Drift-plus-penalty weight");
  app->add_option("--participation-rate", f.participation_rate,
                  "Minimum selection frequency D, in (0, 1)");
  app->add_option("--epsilon", f.epsilon, "Privacy level");
  app->add_option("--zeta", f.zeta, "Range of the sensing data");
  app->add_option("--dropout-window", f.dropout_window,
                  "Slots unselected before a user leaves (0 disables)");
  app->add_option("--probe", f.probe,
                  "Misreports probed per slot against one random user");
  app->add_option("--reserve-price", f.reserve_price,
                  "Payment to irreplaceable winners (0 = automatic)");
  app->add_option("--config", f.config,
                  "JSON config file applied on top of the preset");
  app->add_flag("--allow-infeasible", f.allow_infeasible,
                "Downgrade the participation feasibility check to a warning");
  app->add_flag("--redraw-costs", f.redraw_costs,
                "Draw fresh user costs every slot");
}

// Preset, then config file, then explicit flags.
lepa_status BuildScenario(const ScenarioFlags& f, lepa_scenario** out) {
  lepa_status s = lepa_scenario_create(f.setting.c_str(), out);
  if (s != LEPA_OK) return s;
  lepa_scenario* sc = *out;
  auto number = [&](const char* key, double value) {
    if (s == LEPA_OK) s = lepa_scenario_set_number(sc, key, value);
  };
  if (!f.config.empty()) s = lepa_scenario_load_file(sc, f.config.c_str());
  if (f.mechanism && s == LEPA_OK) {
    s = lepa_scenario_set_string(sc, "mechanism", f.mechanism->c_str());
  }
  if (f.seed && s == LEPA_OK) s = lepa_scenario_set_seed(sc, *f.seed);
  if (f.horizon) number("horizon", *f.horizon);
  if (f.users) number("n", *f.users);
  if (f.tasks) number("k", *f.tasks);
  if (f.gamma) number("gamma", *f.gamma);
  if (f.participation_rate) number("participation_rate", *f.participation_rate);
  if (f.epsilon) number("epsilon", *f.epsilon);
  if (f.zeta) number("zeta", *f.zeta);
  if (f.dropout_window) number("dropout_window", *f.dropout_window);
  if (f.probe) number("probe_misreports", *f.probe);
  if (f.reserve_price) number("reserve_price", *f.reserve_price);
  if (f.allow_infeasible) number("allow_infeasible_participation", 1);
  if (f.redraw_costs) number("redraw_costs", 1);
  if (s == LEPA_OK) s = lepa_scenario_validate(sc);
  return s;
}

bool EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "lepa: cannot create %s: %s\n", dir.c_str(),
                 ec.message().c_str());
    return false;
  }
  return true;
}

std::string Join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

int RunCommand(const ScenarioFlags& flags, const std::string& out_dir) {
  lepa_scenario* scenario = nullptr;
  lepa_status s = BuildScenario(flags, &scenario);
  if (s != LEPA_OK) {
    lepa_scenario_destroy(scenario);
    return Report(s, "scenario");
  }
  lepa_trace* trace = nullptr;
  s = lepa_run(scenario, &trace);
  lepa_scenario_destroy(scenario);
  if (s != LEPA_OK) return Report(s, "run");
  for (size_t i = 0; i < lepa_trace_warning_count(trace); ++i) {
    std::fprintf(stderr, "lepa: warning: %s\n", lepa_trace_warning(trace, i));
  }
  int code = kExitOk;
  if (!EnsureDir(out_dir)) {
    code = kExitUsage;
  } else if ((s = lepa_trace_write_csv(
                  trace, Join(out_dir, "trace.csv").c_str())) != LEPA_OK ||
             (s = lepa_trace_write_scenario_json(
                  trace, Join(out_dir, "scenario.json").c_str())) != LEPA_OK) {
    code = Report(s, "write");
  } else {
    std::printf("slots=%zu cum_payment=%.6g avg_payment=%.6g alive=%d%s\n",
                lepa_trace_slot_count(trace),
                lepa_trace_cumulative_payment(trace),
                lepa_trace_average_payment(trace),
                lepa_trace_final_alive(trace),
                lepa_trace_terminated(trace) ? " (terminated early)" : "");
  }
  lepa_trace_destroy(trace);
  return code;
}

int SweepCommand(const ScenarioFlags& flags, const std::string& out_dir,
                 std::string parameter, std::vector<double> grid,
                 int replications) {
  if (parameter.empty()) parameter = flags.setting == "III" ? "epsilon" : "n";
  if (grid.empty()) {
    grid = parameter == "n" ? std::vector<double>{100, 125, 150, 175, 200}
                            : std::vector<double>{0.5, 0.75, 1.0, 1.5, 2.0};
  }
  lepa_scenario* scenario = nullptr;
  lepa_status s = BuildScenario(flags, &scenario);
  if (s != LEPA_OK) {
    lepa_scenario_destroy(scenario);
    return Report(s, "scenario");
  }
  lepa_summary* summary = nullptr;
  s = lepa_sweep(scenario, parameter.c_str(), grid.data(), grid.size(),
                 replications, &summary);
  lepa_scenario_destroy(scenario);
  if (s != LEPA_OK) return Report(s, "sweep");
  int code = kExitOk;
  if (!EnsureDir(out_dir)) {
    code = kExitUsage;
  } else if ((s = lepa_summary_write_csv(
                  summary, Join(out_dir, "summary.csv").c_str())) != LEPA_OK) {
    code = Report(s, "write");
  } else {
    for (size_t i = 0; i < lepa_summary_size(summary); ++i) {
      double x = 0, mean = 0, sd = 0;
      int reps = 0;
      lepa_summary_point(summary, i, &x, &mean, &sd, &reps);
      std::printf("%s=%g mean=%.6g std=%.6g replications=%d\n",
                  parameter.c_str(), x, mean, sd, reps);
    }
  }
  lepa_summary_destroy(summary);
  return code;
}

int CertifyCommand(unsigned long long seed, int instances, int max_n,
                   int max_k, int misreports, const std::string& out_dir) {
  if (!EnsureDir(out_dir)) return kExitUsage;
  lepa_certify_report r{};
  const std::string path = Join(out_dir, "certificates.jsonl");
  const lepa_status s =
      lepa_certify(seed, instances, max_n, max_k, misreports, path.c_str(), &r);
  if (s != LEPA_OK) return Report(s, "certify");
  std::printf(
      "instances=%d certified=%d degenerate=%d bound_violations=%d "
      "lemma_violations=%d greedy_bound_violations=%d truth_probes=%ld "
      "truth_violations=%ld ir_violations=%ld -> %s\n",
      r.instances, r.certified, r.degenerate, r.bound_violations,
      r.lemma_violations, r.greedy_bound_violations, r.truth_probes,
      r.truth_violations, r.ir_violations, r.passed ? "PASS" : "FAIL");
  return r.passed ? kExitOk : kExitCertification;
}

int AccuracyCommand(double zeta, long long trials, unsigned long long seed,
                    const std::string& out_dir) {
  if (!EnsureDir(out_dir)) return kExitUsage;
  int cells = 0;
  int failed = 0;
  const std::string path = Join(out_dir, "accuracy.csv");
  const lepa_status s =
      lepa_accuracy(zeta, trials, seed, path.c_str(), &cells, &failed);
  if (s != LEPA_OK) return Report(s, "accuracy");
  std::printf("cells=%d failed=%d -> %s\n", cells, failed,
              failed == 0 ? "PASS" : "FAIL");
  return failed == 0 ? kExitOk : kExitCertification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEPA auction simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lepa_version());

  ScenarioFlags run_flags;
  std::string run_out = ".";
  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  AddScenarioFlags(run, run_flags);
  run->add_option("--out", run_out, "Output directory");

  ScenarioFlags sweep_flags;
  std::string sweep_out = ".";
  std::string parameter;
  std::vector<double> grid;
  int replications = 10;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep n or epsilon");
  AddScenarioFlags(sweep, sweep_flags);
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--parameter", parameter, "n or epsilon")
      ->check(CLI::IsMember({"n", "epsilon"}));
  sweep->add_option("--grid", grid, "Grid values")->delimiter(',');
  sweep->add_option("--replications", replications, "Seeds per grid point")
      ->check(CLI::PositiveNumber);

  unsigned long long certify_seed = 7;
  int instances = 500;
  int max_n = 10;
  int max_k = 5;
  int misreports = 20;
  std::string certify_out = ".";
  CLI::App* certify =
      app.add_subcommand("certify", "Bound and truthfulness certification");
  certify->add_option("--seed", certify_seed, "Suite seed");
  certify->add_option("--instances", instances, "Random instances")
      ->check(CLI::PositiveNumber);
  certify->add_option("--max-n", max_n, "Largest user count (<= 20)")
      ->check(CLI::Range(2, 20));
  certify->add_option("--max-k", max_k, "Largest task count")
      ->check(CLI::Range(1, 16));
  certify->add_option("--misreports", misreports, "Misreports per user")
      ->check(CLI::NonNegativeNumber);
  certify->add_option("--out", certify_out, "Output directory");

  double accuracy_zeta = 2.5;
  long long trials = 100000;
  unsigned long long accuracy_seed = 11;
  std::string accuracy_out = ".";
  CLI::App* accuracy =
      app.add_subcommand("accuracy", "Monte Carlo accuracy guarantee check");
  accuracy->add_option("--zeta", accuracy_zeta, "Range of the sensing data")
      ->check(CLI::PositiveNumber);
  accuracy->add_option("--trials", trials, "Trials per cell (>= 10000)");
  accuracy->add_option("--seed", accuracy_seed, "Suite seed");
  accuracy->add_option("--out", accuracy_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*run) return RunCommand(run_flags, run_out);
  if (*sweep) {
    return SweepCommand(sweep_flags, sweep_out, parameter, grid, replications);
  }
  if (*certify) {
    return CertifyCommand(certify_seed, instances, max_n, max_k, misreports,
                          certify_out);
  }
  if (*accuracy) {
    return AccuracyCommand(accuracy_zeta, trials, accuracy_seed, accuracy_out);
  }
  return kExitUsage;
}
