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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lepa/auction.hpp"
#include "lepa/random.hpp"
#include "lepa/simulation.hpp"
#include "lepa/suites.hpp"

namespace lepa {
namespace {

using sim::Mechanism;
using sim::ScenarioConfig;
using sim::Setting;

struct Result {
  bool passed = false;
  std::string detail;
};

// Winner payments below cost across every simulated and certified slot.
struct IrTally {
  long winners = 0;
  long violations = 0;
  double min_slack = 0.0;
  bool any = false;

  void Add(const sim::ExperimentTrace& t) {
    winners += t.winners_total;
    violations += t.ir_violations;
    if (t.winners_total > 0) {
      min_slack = any ? std::min(min_slack, t.min_ir_slack) : t.min_ir_slack;
      any = true;
    }
  }
};

IrTally g_ir;

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

sim::ExperimentTrace Run(ScenarioConfig config, Mechanism mechanism,
                         int horizon, std::uint64_t seed) {
  config.mechanism = mechanism;
  config.horizon = horizon;
  config.seed = seed;
  sim::ExperimentTrace trace = sim::RunExperiment(config);
  g_ir.Add(trace);
  return trace;
}

Result Retention() {
  const ScenarioConfig config = ScenarioConfig::Preset(Setting::kI);
  const int n = config.n;
  int lepa_min = n;
  int static_low = 0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    lepa_min = std::min(lepa_min,
                        Run(config, Mechanism::kLepa, 100, s).FinalAlive());
    if (Run(config, Mechanism::kStatic, 100, s).FinalAlive() < 0.6 * n) {
      ++static_low;
    }
  }
  return {lepa_min >= 0.9 * n && static_low >= 0.8 * seeds,
          Format("lepa min alive %d/%d, static below 0.6n on %d/%d seeds",
                 lepa_min, n, static_low, seeds)};
}

Result PaymentDominance() {
  const ScenarioConfig config = ScenarioConfig::Preset(Setting::kI);
  int wins = 0;
  const int seeds = 20;
  for (int s = 1; s <= seeds; ++s) {
    const double lepa = Run(config, Mechanism::kLepa, 200, s).CumulativePayment();
    const double forced =
        Run(config, Mechanism::kCompulsory, 200, s).CumulativePayment();
    if (lepa <= forced) ++wins;
  }
  return {wins >= 0.9 * seeds,
          Format("lepa <= compulsory on %d/%d seeds", wins, seeds)};
}

std::vector<sim::SweepPoint> SweepAndTally(const ScenarioConfig& config,
                                           sim::SweepParameter parameter,
                                           const std::vector<double>& grid) {
  const auto points = sim::Sweep(config, parameter, grid, 10);
  for (const sim::SweepPoint& p : points) {
    g_ir.violations += p.ir_violations;
    if (g_ir.any) {
      g_ir.min_slack = std::min(g_ir.min_slack, p.min_ir_slack);
    } else {
      g_ir.min_slack = p.min_ir_slack;
      g_ir.any = true;
    }
  }
  return points;
}

std::string Means(const std::vector<sim::SweepPoint>& points) {
  std::string out;
  for (const sim::SweepPoint& p : points) {
    out += Format("%s%g: %.2f+-%.2f", out.empty() ? "" : ", ", p.grid_value,
                  p.mean_avg_payment, p.std_avg_payment);
  }
  return out;
}

Result MonotoneInUsers() {
  // Larger pools fail the participation check; the sweep proceeds with a
  // warning.
  ScenarioConfig config = ScenarioConfig::Preset(Setting::kII);
  config.allow_infeasible_participation = true;
  const auto points =
      SweepAndTally(config, sim::SweepParameter::kUsers, {100, 150, 200});
  bool ok = true;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const double tol =
        std::min(points[i].std_avg_payment, points[i + 1].std_avg_payment);
    ok = ok && points[i + 1].mean_avg_payment >= points[i].mean_avg_payment - tol;
  }
  return {ok, "mean by n " + Means(points)};
}

Result UShapeInEpsilon() {
  // Dropout off: at high epsilon one winner per task suffices and dropout
  // would shrink the pool, hiding the rise in payment.
  ScenarioConfig config = ScenarioConfig::Preset(Setting::kIII);
  config.dropout_window = 0;
  config.allow_infeasible_participation = true;
  const auto points = SweepAndTally(config, sim::SweepParameter::kEpsilon,
                                    {0.5, 0.75, 1.0, 1.5, 2.0});
  const auto lowest = std::min_element(
      points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.mean_avg_payment < b.mean_avg_payment;
      });
  const auto clears = [&](const sim::SweepPoint& end) {
    const double sd = std::max(end.std_avg_payment, lowest->std_avg_payment);
    return end.mean_avg_payment >= lowest->mean_avg_payment + sd;
  };
  return {clears(points.front()) && clears(points.back()),
          "mean by epsilon " + Means(points)};
}

Result Accuracy() {
  int cells = 0;
  int failed = 0;
  double worst = 0.0;
  for (double zeta : {1.0, 2.5}) {
    for (const suites::AccuracyCell& c :
         suites::RunAccuracyGrid(zeta, 100000, 11)) {
      ++cells;
      if (!c.passed) ++failed;
      worst = std::max(worst, c.frequency / c.delta);
    }
  }
  return {failed == 0,
          Format("%d cells (zeta 1 and 2.5), %d failed, max freq/delta %.3f",
                 cells, failed, worst)};
}

Result Truthfulness() {
  suites::CertifyOptions options;
  options.seed = 3;
  options.instances = 1000;
  options.max_n = 8;
  options.max_k = 4;
  options.misreports = 20;
  const suites::CertifyReport r = suites::RunCertification(options);
  g_ir.violations += r.ir_violations;
  return {r.truth_violations == 0,
          Format("%ld probes, %ld gains above 1e-9, %ld IR violations",
                 r.truth_probes, r.truth_violations, r.ir_violations)};
}

Result IndividualRationality() {
  return {g_ir.violations == 0,
          Format("%ld winners in single runs plus all sweep and probe winners, "
                 "%ld paid below cost, min slack %.6g",
                 g_ir.winners, g_ir.violations, g_ir.min_slack)};
}

Result ApproximationBound() {
  suites::CertifyOptions options;
  options.instances = 500;
  options.max_n = 10;
  options.max_k = 5;
  options.misreports = 0;
  int setter_misses = 0;
  const suites::CertifyReport r = suites::RunCertification(
      options, [&](const suites::CertificateRecord& rec) {
        if (!rec.degenerate && !rec.certificate.setter_bound_holds) {
          ++setter_misses;
        }
      });
  return {r.bound_violations == 0 && r.lemma_violations == 0 &&
              r.ir_violations == 0,
          Format("%d certified, %d degenerate skipped, %d bound and %d lemma "
                 "violations (setter-ratio bound misses %d)",
                 r.certified, r.degenerate, r.bound_violations,
                 r.lemma_violations, setter_misses)};
}

Result DriftBound() {
  Rng rng(5);
  int violations = 0;
  double max_excess = -INFINITY;
  const int states = 10000;
  for (int s = 0; s < states; ++s) {
    const int n = static_cast<int>(rng.UniformInt(1, 30));
    const double rate = rng.Uniform(0.01, 1.0);
    std::vector<double> queues(n);
    std::vector<int> selected(n);
    for (int i = 0; i < n; ++i) {
      queues[i] = rng.Uniform01() < 0.1 ? 0.0 : rng.Uniform(0.0, 50.0);
      selected[i] = static_cast<int>(rng.UniformInt(0, 1));
    }
    const auction::Drift d =
        auction::DriftExactAndBound(queues, selected, rate);
    max_excess = std::max(max_excess, d.exact - d.bound);
    if (d.exact > d.bound + 1e-9) ++violations;
  }
  return {violations == 0,
          Format("%d states, %d violations, max exact-bound %.4g", states,
                 violations, max_excess)};
}

Result LongTermParticipation() {
  const ScenarioConfig config = ScenarioConfig::Preset(Setting::kI);
  const double floor = config.participation_rate - 0.05;
  double min_freq = 1.0;
  double max_growth = -INFINITY;
  bool terminated = false;
  for (int s = 1; s <= 5; ++s) {
    const sim::ExperimentTrace t = Run(config, Mechanism::kLepa, 2000, s);
    terminated = terminated || t.terminated;
    for (size_t i = 0; i < t.selection_frequency.size(); ++i) {
      if (t.alive_final[i]) min_freq = std::min(min_freq, t.selection_frequency[i]);
    }
    // Fitted rise of the max backlog across the window.
    max_growth = std::max(max_growth, sim::MaxQueueTrend(t, 500) * 500);
  }
  return {!terminated && min_freq >= floor && max_growth < 1.0,
          Format("min alive frequency %.4f (floor %.2f), max fitted backlog "
                 "rise over last 500 slots %.3f",
                 min_freq, floor, max_growth)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Result()> check;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "retention", 60, Retention},
      {2, "payment-dominance", 60, PaymentDominance},
      {3, "monotone-in-n", 120, MonotoneInUsers},
      {4, "u-shape-in-epsilon", 120, UShapeInEpsilon},
      {5, "aggregation-accuracy", 60, Accuracy},
      {6, "truthfulness", 120, Truthfulness},
      {7, "individual-rationality", 0, IndividualRationality},
      {8, "approximation-bound", 180, ApproximationBound},
      {9, "drift-bound", 5, DriftBound},
      {10, "long-term-participation", 120, LongTermParticipation},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    const bool passed = r.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s criterion %d %s: %s; %.2fs%s\n", passed ? "PASS" : "FAIL",
                c.id, c.name, r.detail.c_str(), secs,
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace lepa

int main() { return lepa::Main(); }
