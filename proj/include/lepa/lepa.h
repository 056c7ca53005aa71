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

/* C interface to the LEPA auction engine and simulator. Every function
 * returns a lepa_status; on failure lepa_last_error() describes the cause
 * for the calling thread. Handles are opaque and owned by the caller. */

#ifndef LEPA_LEPA_H_
#define LEPA_LEPA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LEPA_BUILDING_LIBRARY)
#define LEPA_API __declspec(dllexport)
#else
#define LEPA_API __declspec(dllimport)
#endif
#else
#define LEPA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lepa_status {
  LEPA_OK = 0,
  LEPA_ERR_INVALID_ARGUMENT = 1,
  LEPA_ERR_INFEASIBLE = 2,
  LEPA_ERR_EMPTY_AGGREGATION = 3,
  LEPA_ERR_PRECONDITION = 4,
  LEPA_ERR_SIZE_LIMIT = 5,
  LEPA_ERR_DEGENERATE_RATIO = 6,
  LEPA_ERR_IO = 7,
  LEPA_ERR_INTERNAL = 8
} lepa_status;

typedef struct lepa_scenario lepa_scenario;
typedef struct lepa_trace lepa_trace;
typedef struct lepa_summary lepa_summary;

LEPA_API const char* lepa_version(void);
LEPA_API const char* lepa_status_name(lepa_status status);
/* Message of the last failed call on this thread; "" if none. */
LEPA_API const char* lepa_last_error(void);

/* --- scenarios ---------------------------------------------------------- */

/* setting: "I", "II", "III" or "custom". */
LEPA_API lepa_status lepa_scenario_create(const char* setting,
                                          lepa_scenario** out);
LEPA_API void lepa_scenario_destroy(lepa_scenario* scenario);

/* Numeric keys: n, k, epsilon, zeta, gamma, participation_rate, horizon,
 * dropout_window, seed, reserve_price, probe_misreports, redraw_costs,
 * allow_infeasible_participation. Integer keys reject fractional values. */
LEPA_API lepa_status lepa_scenario_set_number(lepa_scenario* scenario,
                                              const char* key, double value);
LEPA_API lepa_status lepa_scenario_set_seed(lepa_scenario* scenario,
                                            uint64_t seed);
/* String keys: mechanism ("lepa", "static", "compulsory"), setting. */
LEPA_API lepa_status lepa_scenario_set_string(lepa_scenario* scenario,
                                              const char* key,
                                              const char* value);
/* Applies a JSON config object (or a scenario.json document). */
LEPA_API lepa_status lepa_scenario_apply_json(lepa_scenario* scenario,
                                              const char* json_text);
LEPA_API lepa_status lepa_scenario_load_file(lepa_scenario* scenario,
                                             const char* path);
LEPA_API lepa_status lepa_scenario_validate(const lepa_scenario* scenario);
/* Resolved configuration as JSON; the string lives until the next call on
 * the same handle or its destruction. */
LEPA_API lepa_status lepa_scenario_to_json(lepa_scenario* scenario,
                                           const char** json_text);

/* --- experiments -------------------------------------------------------- */

LEPA_API lepa_status lepa_run(const lepa_scenario* scenario, lepa_trace** out);
LEPA_API void lepa_trace_destroy(lepa_trace* trace);

LEPA_API size_t lepa_trace_slot_count(const lepa_trace* trace);
LEPA_API size_t lepa_trace_user_count(const lepa_trace* trace);
LEPA_API lepa_status lepa_trace_slot(const lepa_trace* trace, size_t slot,
                                     double* total_payment,
                                     double* cum_payment, int* alive,
                                     size_t* winners, double* max_queue);
LEPA_API double lepa_trace_average_payment(const lepa_trace* trace);
LEPA_API double lepa_trace_cumulative_payment(const lepa_trace* trace);
LEPA_API int lepa_trace_final_alive(const lepa_trace* trace);
/* 1 when the run was cut short by an uncoverable slot. */
LEPA_API int lepa_trace_terminated(const lepa_trace* trace);
LEPA_API lepa_status lepa_trace_selection_frequency(const lepa_trace* trace,
                                                    size_t user,
                                                    double* frequency,
                                                    int* alive);
/* Winners paid below their true cost; should always be 0. */
LEPA_API long lepa_trace_ir_violations(const lepa_trace* trace);
LEPA_API long lepa_trace_probe_violations(const lepa_trace* trace);
/* Regression slope of the max queue over the final `window` slots. */
LEPA_API double lepa_trace_queue_trend(const lepa_trace* trace, int window);
LEPA_API size_t lepa_trace_warning_count(const lepa_trace* trace);
LEPA_API const char* lepa_trace_warning(const lepa_trace* trace, size_t i);

LEPA_API lepa_status lepa_trace_write_csv(const lepa_trace* trace,
                                          const char* path);
/* Resolved config, derived tasks, diagnostics and outcome summary. */
LEPA_API lepa_status lepa_trace_write_scenario_json(const lepa_trace* trace,
                                                    const char* path);

/* --- sweeps ------------------------------------------------------------- */

/* parameter: "n" or "epsilon". Replication r of each point uses seed + r. */
LEPA_API lepa_status lepa_sweep(const lepa_scenario* scenario,
                                const char* parameter, const double* grid,
                                size_t grid_size, int replications,
                                lepa_summary** out);
LEPA_API void lepa_summary_destroy(lepa_summary* summary);
LEPA_API size_t lepa_summary_size(const lepa_summary* summary);
LEPA_API lepa_status lepa_summary_point(const lepa_summary* summary, size_t i,
                                        double* grid_value, double* mean,
                                        double* stddev, int* replications);
LEPA_API long lepa_summary_ir_violations(const lepa_summary* summary);
LEPA_API lepa_status lepa_summary_write_csv(const lepa_summary* summary,
                                            const char* path);

/* --- oracle suites ------------------------------------------------------ */

typedef struct lepa_certify_report {
  int instances;
  int certified;
  int degenerate;
  int bound_violations;
  int lemma_violations;
  int greedy_bound_violations;
  long truth_probes;
  long truth_violations;
  long ir_violations;
  int passed;
} lepa_certify_report;

/* Writes one JSON line per instance to `jsonl_path` unless it is NULL. */
LEPA_API lepa_status lepa_certify(uint64_t seed, int instances, int max_n,
                                  int max_k, int misreports,
                                  const char* jsonl_path,
                                  lepa_certify_report* report);

/* Monte Carlo accuracy grid (20 cells). Writes a CSV unless `csv_path` is
 * NULL; `failed` receives the number of cells whose frequency exceeds delta.
 */
LEPA_API lepa_status lepa_accuracy(double zeta, int64_t trials, uint64_t seed,
                                   const char* csv_path, int* cells,
                                   int* failed);

/* --- single slot -------------------------------------------------------- */

/* Runs one auction slot on flat arrays. Bidder i declares tasks
 * cap_tasks[cap_offsets[i] .. cap_offsets[i+1]) (sorted task indices) and
 * has backlog queues[i]; its id is i. Task j needs requirements[j] winners.
 * On success won[i] is 1 for winners and payments[i] their payment (0 for
 * losers). mechanism: "lepa" or "static". */
LEPA_API lepa_status lepa_run_slot(
    const char* mechanism, size_t n_bidders, const double* sensing_bids,
    const double* unit_privacy_bids, const double* queues,
    const size_t* cap_offsets, const uint32_t* cap_tasks, size_t n_tasks,
    const int* requirements, double epsilon, double gamma,
    double reserve_price, int* won, double* payments);

#ifdef __cplusplus
}
#endif

#endif /* LEPA_LEPA_H_ */
