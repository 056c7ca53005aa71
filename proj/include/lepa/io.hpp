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

#ifndef LEPA_IO_HPP_
#define LEPA_IO_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lepa/simulation.hpp"
#include "lepa/suites.hpp"

namespace lepa::io {

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double value);

// Header: slot,total_payment,cum_payment,alive,winners,max_queue. A trace
// cut short by infeasibility ends with a `# terminated` comment line.
void WriteTraceCsv(const sim::ExperimentTrace& trace, std::ostream& out);

// Header: grid_value,mean_avg_payment,std_avg_payment,replications.
void WriteSummaryCsv(const std::vector<sim::SweepPoint>& points,
                     std::ostream& out);

void WriteAccuracyCsv(const std::vector<suites::AccuracyCell>& cells,
                      std::ostream& out);

nlohmann::json ConfigToJson(const sim::ScenarioConfig& config);

// Applies every key present in `doc` on top of `base`. Accepts either a bare
// config object or a scenario document with a "config" member. Unknown keys
// are rejected with kInvalidParameter.
sim::ScenarioConfig ApplyConfigJson(sim::ScenarioConfig base,
                                    const nlohmann::json& doc);

sim::ScenarioConfig LoadConfigFile(const sim::ScenarioConfig& base,
                                   const std::string& path);

// Resolved configuration plus derived tasks, feasibility diagnostics and,
// when a trace is given, its outcome summary.
nlohmann::json ScenarioToJson(const sim::Scenario& scenario,
                              const sim::ExperimentTrace* trace);

nlohmann::json CertificateToJson(const suites::CertificateRecord& record);

void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace lepa::io

#endif  // LEPA_IO_HPP_
