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

#ifndef LEPA_PRIVACY_HPP_
#define LEPA_PRIVACY_HPP_

#include <cstdint>
#include <span>

#include "lepa/core_model.hpp"
#include "lepa/random.hpp"

namespace lepa::privacy {

// Laplace noise calibrated to a data range zeta at privacy level epsilon.
struct NoiseSpec {
  double scale = 1.0;

  static NoiseSpec ForConfig(const EngineConfig& config);
  double Variance() const { return 2.0 * scale * scale; }
};

struct AggregationResult {
  double estimate = 0.0;
  double true_mean = 0.0;
  double abs_error = 0.0;
};

// Inverse-CDF transform: maps u in (-1/2, 1/2) to a Laplace(0, scale)
// variate, sign(u) * (-scale * ln(1 - 2|u|)).
double LaplaceFromUniform(double u, double scale);

// Draws one Laplace(0, scale) variate. The uniform input is
// Rng::UniformOpen01() - 1/2, so a fixed seed fixes the output bit-for-bit.
double LaplaceSample(double scale, Rng& rng);

// value + Lap(0, zeta / epsilon).
double Perturb(double value, const EngineConfig& config, Rng& rng);

// Analytic local-DP check: the Laplace density ratio between two inputs at
// distance zeta is at most exp(zeta / scale), so the mechanism is
// epsilon-LDP iff zeta / scale <= epsilon.
bool VerifyLdp(double scale, double zeta, double epsilon);

// Arithmetic mean; throws kEmptyAggregation on an empty input.
double Aggregate(std::span<const double> values);

// Perturbs every raw reading, aggregates, and compares with the raw mean.
AggregationResult AggregateReports(std::span<const double> raw_values,
                                   const EngineConfig& config, Rng& rng);

// Monte Carlo estimate of Pr[|mean of n noise draws| >= alpha]. The true
// mean cancels out of the aggregation error, so only noise is simulated.
// Requires n_winners >= the task's accuracy requirement and trials >= 1e4.
double EmpiricalAccuracy(int n_winners, const AccuracySpec& spec,
                         const EngineConfig& config, std::int64_t trials,
                         Rng& rng);

}  // namespace lepa::privacy

#endif  // LEPA_PRIVACY_HPP_
