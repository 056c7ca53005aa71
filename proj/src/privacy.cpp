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

#include "lepa/privacy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lepa/error.hpp"

namespace lepa::privacy {
namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

}  // namespace


NoiseSpec NoiseSpec::ForConfig(const EngineConfig& config) {
  return NoiseSpec{config.zeta / config.epsilon};
}

double LaplaceFromUniform(double u, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    Fail(ErrorCode::kInvalidParameter, "Laplace scale must be positive");
  }
  if (u == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

double LaplaceSample(double scale, Rng& rng) {
  return LaplaceFromUniform(rng.UniformOpen01() - 0.5, scale);
}

double Perturb(double value, const EngineConfig& config, Rng& rng) {
  return value + LaplaceSample(NoiseSpec::ForConfig(config).scale, rng);
}

bool VerifyLdp(double scale, double zeta, double epsilon) {
  // zeta / (zeta / epsilon) can land an ulp above epsilon; allow a few.
  return zeta / scale <= epsilon * (1.0 + 4.0 * kUlp);
}

double Aggregate(std::span<const double> values) {
  if (values.empty()) {
    Fail(ErrorCode::kEmptyAggregation, "cannot aggregate an empty report set");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

AggregationResult AggregateReports(std::span<const double> raw_values,
                                   const EngineConfig& config, Rng& rng) {
  std::vector<double> reports;
  reports.reserve(raw_values.size());
  for (double d : raw_values) reports.push_back(Perturb(d, config, rng));
  AggregationResult result;
  result.estimate = Aggregate(reports);
  result.true_mean = Aggregate(raw_values);
  result.abs_error = std::abs(result.estimate - result.true_mean);
  return result;
}

double EmpiricalAccuracy(int n_winners, const AccuracySpec& spec,
                         const EngineConfig& config, std::int64_t trials,
                         Rng& rng) {
  const int required = AccuracyRequirement(spec, config.epsilon, config.zeta);
  if (n_winners < required) {
    std::ostringstream msg;
    msg << "n_winners " << n_winners << " is below the accuracy requirement "
        << required;
    Fail(ErrorCode::kPrecondition, msg.str());
  }
  if (trials < 10000) {
    Fail(ErrorCode::kPrecondition, "at least 1e4 Monte Carlo trials required");
  }
  const double scale = NoiseSpec::ForConfig(config).scale;
  std::int64_t misses = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (int i = 0; i < n_winners; ++i) sum += LaplaceSample(scale, rng);
    if (std::abs(sum / n_winners) >= spec.alpha) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(trials);
}

}  // namespace lepa::privacy
