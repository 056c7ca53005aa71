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

#include "lepa/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lepa/error.hpp"

namespace lepa::io {
namespace {

using nlohmann::json;

json RangeJson(double lo, double hi) { return json::array({lo, hi}); }

sim::Range ReadRange(const json& value, const char* key) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    Fail(ErrorCode::kInvalidParameter,
         std::string(key) + " must be a two-element numeric array");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

template <typename T>
T Read(const json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kInvalidParameter,
         std::string("config key ") + key + " has the wrong type");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void WriteTraceCsv(const sim::ExperimentTrace& trace, std::ostream& out) {
  out << "slot,total_payment,cum_payment,alive,winners,max_queue\n";
  for (const sim::SlotRecord& r : trace.slots) {
    out << r.slot << ',' << FormatDouble(r.total_payment) << ','
        << FormatDouble(r.cum_payment) << ',' << r.alive << ',';
    for (std::size_t i = 0; i < r.winners.size(); ++i) {
      out << (i ? ";" : "") << r.winners[i];
    }
    out << ',' << FormatDouble(r.max_queue) << '\n';
  }
  if (trace.terminated) {
    out << "# terminated at slot " << trace.termination_slot << ": "
        << trace.termination_reason << '\n';
  }
}

void WriteSummaryCsv(const std::vector<sim::SweepPoint>& points,
                     std::ostream& out) {
  out << "grid_value,mean_avg_payment,std_avg_payment,replications\n";
  for (const sim::SweepPoint& p : points) {
    out << FormatDouble(p.grid_value) << ',' << FormatDouble(p.mean_avg_payment)
        << ',' << FormatDouble(p.std_avg_payment) << ',' << p.replications
        << '\n';
  }
}

void WriteAccuracyCsv(const std::vector<suites::AccuracyCell>& cells,
                      std::ostream& out) {
  out << "alpha,delta,epsilon,zeta,requirement,trials,frequency,passed\n";
  for (const suites::AccuracyCell& c : cells) {
    out << FormatDouble(c.alpha) << ',' << FormatDouble(c.delta) << ','
        << FormatDouble(c.epsilon) << ',' << FormatDouble(c.zeta) << ','
        << c.requirement << ',' << c.trials << ',' << FormatDouble(c.frequency)
        << ',' << (c.passed ? "true" : "false") << '\n';
  }
}

json ConfigToJson(const sim::ScenarioConfig& c) {
  json doc;
  doc["setting"] = sim::SettingName(c.setting);
  doc["n"] = c.n;
  doc["k"] = c.k;
  doc["alpha_range"] = RangeJson(c.alpha.lo, c.alpha.hi);
  doc["delta_range"] = RangeJson(c.delta.lo, c.delta.hi);
  doc["cost_range"] = RangeJson(c.cost.lo, c.cost.hi);
  doc["capability_range"] = json::array({c.capability.lo, c.capability.hi});
  doc["epsilon"] = c.epsilon;
  doc["zeta"] = c.zeta;
  doc["gamma"] = c.gamma;
  doc["participation_rate"] = c.participation_rate;
  doc["horizon"] = c.horizon;
  doc["dropout_window"] = c.dropout_window;
  doc["seed"] = c.seed;
  doc["mechanism"] = sim::MechanismName(c.mechanism);
  doc["redraw_costs"] = c.redraw_costs;
  doc["allow_infeasible_participation"] = c.allow_infeasible_participation;
  doc["reserve_price"] = c.reserve_price;
  doc["probe_misreports"] = c.probe_misreports;
  return doc;
}

sim::ScenarioConfig ApplyConfigJson(sim::ScenarioConfig c, const json& doc) {
  if (!doc.is_object()) {
    Fail(ErrorCode::kInvalidParameter, "config document must be an object");
  }
  if (doc.contains("config")) return ApplyConfigJson(c, doc.at("config"));

  // A preset named in the file is applied first so that explicit keys in
  // the same file override it.
  if (doc.contains("setting")) {
    const auto name = Read<std::string>(doc.at("setting"), "setting");
    const auto setting = sim::ParseSetting(name);
    if (!setting) {
      Fail(ErrorCode::kInvalidParameter, "unknown setting '" + name + "'");
    }
    if (*setting != c.setting) {
      const auto seed = c.seed;
      c = sim::ScenarioConfig::Preset(*setting);
      c.seed = seed;
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "setting") {
      continue;
    } else if (key == "n") {
      c.n = Read<int>(value, "n");
    } else if (key == "k") {
      c.k = Read<int>(value, "k");
    } else if (key == "alpha_range") {
      c.alpha = ReadRange(value, "alpha_range");
    } else if (key == "delta_range") {
      c.delta = ReadRange(value, "delta_range");
    } else if (key == "cost_range") {
      c.cost = ReadRange(value, "cost_range");
    } else if (key == "capability_range") {
      const sim::Range r = ReadRange(value, "capability_range");
      c.capability = {static_cast<int>(r.lo), static_cast<int>(r.hi)};
    } else if (key == "epsilon") {
      c.epsilon = Read<double>(value, "epsilon");
    } else if (key == "zeta") {
      c.zeta = Read<double>(value, "zeta");
    } else if (key == "gamma") {
      c.gamma = Read<double>(value, "gamma");
    } else if (key == "participation_rate") {
      c.participation_rate = Read<double>(value, "participation_rate");
    } else if (key == "horizon") {
      c.horizon = Read<int>(value, "horizon");
    } else if (key == "dropout_window") {
      c.dropout_window = Read<int>(value, "dropout_window");
    } else if (key == "seed") {
      c.seed = Read<std::uint64_t>(value, "seed");
    } else if (key == "mechanism") {
      const auto name = Read<std::string>(value, "mechanism");
      const auto m = sim::ParseMechanism(name);
      if (!m) {
        Fail(ErrorCode::kInvalidParameter, "unknown mechanism '" + name + "'");
      }
      c.mechanism = *m;
    } else if (key == "redraw_costs") {
      c.redraw_costs = Read<bool>(value, "redraw_costs");
    } else if (key == "allow_infeasible_participation") {
      c.allow_infeasible_participation =
          Read<bool>(value, "allow_infeasible_participation");
    } else if (key == "reserve_price") {
      c.reserve_price = Read<double>(value, "reserve_price");
    } else if (key == "probe_misreports") {
      c.probe_misreports = Read<int>(value, "probe_misreports");
    } else {
      Fail(ErrorCode::kInvalidParameter, "unknown config key '" + key + "'");
    }
  }
  return c;
}

sim::ScenarioConfig LoadConfigFile(const sim::ScenarioConfig& base,
                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kInvalidParameter,
         "config file " + path + " is not valid JSON: " + e.what());
  }
  return ApplyConfigJson(base, doc);
}

json ScenarioToJson(const sim::Scenario& scenario,
                    const sim::ExperimentTrace* trace) {
  json doc;
  doc["config"] = ConfigToJson(scenario.config);
  doc["resolved_reserve_price"] = scenario.config.ResolvedReservePrice();
  json tasks = json::array();
  for (const Task& t : scenario.tasks) {
    tasks.push_back({{"id", t.id},
                     {"alpha", t.spec.alpha},
                     {"delta", t.spec.delta},
                     {"requirement", t.requirement}});
  }
  doc["tasks"] = std::move(tasks);
  const sim::ParticipationCheck& p = scenario.participation;
  doc["participation_check"] = {{"max_requirement", p.max_requirement},
                                {"total_requirement", p.total_requirement},
                                {"min_capability", p.min_capability},
                                {"winner_estimate", p.winner_estimate},
                                {"feasible", p.feasible}};
  doc["warnings"] = scenario.warnings;
  if (trace != nullptr) {
    json summary;
    summary["slots_run"] = trace->slots.size();
    summary["cum_payment"] = trace->CumulativePayment();
    summary["avg_payment"] = trace->AveragePayment();
    summary["final_alive"] = trace->FinalAlive();
    summary["monopolist_events"] = trace->monopolist_events;
    summary["min_ir_slack"] = trace->min_ir_slack;
    summary["ir_violations"] = trace->ir_violations;
    summary["probes"] = trace->probes;
    summary["probe_violations"] = trace->probe_violations;
    doc["summary"] = std::move(summary);
    if (trace->terminated) {
      doc["termination"] = {{"slot", trace->termination_slot},
                            {"reason", trace->termination_reason}};
    } else {
      doc["termination"] = nullptr;
    }
  }
  return doc;
}

json CertificateToJson(const suites::CertificateRecord& record) {
  const oracle::BoundCertificate& c = record.certificate;
  json doc;
  doc["index"] = record.index;
  doc["instance_seed"] = record.instance_seed;
  doc["degenerate"] = record.degenerate;
  if (record.degenerate) {
    doc["degenerate_reason"] = record.degenerate_reason;
  } else {
    doc["theta"] = c.theta;
    doc["d"] = c.d;
    doc["harmonic_d"] = c.harmonic_d;
    doc["delta_ratio"] = c.delta_ratio;
    doc["setter_delta_ratio"] = c.setter_delta_ratio;
    doc["m"] = c.m;
    doc["p_star"] = c.p_star;
    doc["m_star"] = c.m_star;
    doc["mechanism_payment"] = c.mechanism_payment;
    doc["bound_value"] = c.bound_value;
    doc["n"] = c.n;
    doc["shifted_winner_cost"] = c.shifted_winner_cost;
    doc["greedy_bound"] = c.greedy_bound;
    doc["lemma_holds"] = c.lemma_holds;
    doc["greedy_bound_holds"] = c.greedy_bound_holds;
    doc["bound_holds"] = c.passed;
    doc["setter_bound_holds"] = c.setter_bound_holds;
  }
  doc["truth_violations"] = record.truth_violations;
  doc["ir_violations"] = record.ir_violations;
  doc["passed"] = record.passed;
  return doc;
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  out << contents;
  if (!out) Fail(ErrorCode::kIo, "failed while writing " + path);
}

}  // namespace lepa::io
