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

#ifndef LEPA_SUITES_HPP_
#define LEPA_SUITES_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lepa/oracle.hpp"

namespace lepa::suites {

struct CertifyOptions {
  std::uint64_t seed = 7;
  int instances = 500;
  int max_n = 10;
  int max_k = 5;
  int misreports = 20;  // per user; 0 skips the truthfulness probe
};

struct CertificateRecord {
  int index = 0;
  std::uint64_t instance_seed = 0;
  bool degenerate = false;
  std::string degenerate_reason;
  oracle::BoundCertificate certificate;
  int truth_violations = 0;
  int ir_violations = 0;
  bool passed = false;
};

struct CertifyReport {
  int instances = 0;
  int certified = 0;
  int degenerate = 0;
  int bound_violations = 0;
  int lemma_violations = 0;
  int greedy_bound_violations = 0;
  long truth_probes = 0;
  long truth_violations = 0;
  long ir_violations = 0;

  bool Passed() const {
    return bound_violations == 0 && lemma_violations == 0 &&
           truth_violations == 0 && ir_violations == 0;
  }
};

// Draws `instances` random slots (instance i uses seed MixSeed(seed, i)),
// certifies the approximation bound on each, probes every bidder with
// `misreports` sampled misreports, and checks individual rationality of the
// truthful outcome. `sink` receives one record per instance.
CertifyReport RunCertification(
    const CertifyOptions& options,
    const std::function<void(const CertificateRecord&)>& sink = {});

struct AccuracyCell {
  double alpha = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  double zeta = 0.0;
  int requirement = 0;
  std::int64_t trials = 0;
  double frequency = 0.0;
  bool passed = false;  // frequency <= delta
};

// The 20-cell grid alpha in {1, 1.25, 1.5, 1.75, 2} x delta in {0.1, 0.2} x
// epsilon in {0.5, 2}, each evaluated with exactly r_j winners.
std::vector<AccuracyCell> RunAccuracyGrid(double zeta, std::int64_t trials,
                                          std::uint64_t seed);

AccuracyCell RunAccuracyCell(double alpha, double delta, double epsilon,
                             double zeta, std::int64_t trials,
                             std::uint64_t seed);

}  // namespace lepa::suites

#endif  // LEPA_SUITES_HPP_
