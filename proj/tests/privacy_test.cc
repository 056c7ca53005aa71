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
#include <vector>

#include "gtest/gtest.h"
#include "lepa/error.hpp"
#include "lepa/random.hpp"

namespace lepa::privacy {
namespace {

constexpr int kNumSamples = 1000000;

EngineConfig Config(double epsilon, double zeta) {
  EngineConfig config;
  config.epsilon = epsilon;
  config.zeta = zeta;
  return config;
}

TEST(LaplaceTest, ZeroUniformIsMedian) {
  EXPECT_EQ(LaplaceFromUniform(0.0, 1.0), 0.0);
  EXPECT_EQ(LaplaceFromUniform(0.0, 7.5), 0.0);
}

TEST(LaplaceTest, InverseCdfValues) {
  // u = 1/4 is the 3/4 quantile: scale * ln 2.
  EXPECT_NEAR(LaplaceFromUniform(0.25, 2.0), 2.0 * std::log(2.0), 1e-15);
  EXPECT_NEAR(LaplaceFromUniform(-0.25, 2.0), -2.0 * std::log(2.0), 1e-15);
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_THROW(LaplaceSample(0.0, rng), Error);
  EXPECT_THROW(LaplaceSample(-1.0, rng), Error);
}

TEST(LaplaceTest, MeanAndVariance) {
  for (double scale : {1.0, 0.4}) {
    Rng rng(17);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < kNumSamples; ++i) {
      const double x = LaplaceSample(scale, rng);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / kNumSamples;
    const double var = sum_sq / kNumSamples - mean * mean;
    EXPECT_NEAR(mean, 0.0, 0.01 * scale);
    EXPECT_NEAR(var, 2.0 * scale * scale, 0.03 * 2.0 * scale * scale);
    if (scale == 1.0) EXPECT_NEAR(var, 2.0, 0.05);
  }
}

TEST(LaplaceTest, BitReproducible) {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(LaplaceSample(1.3, a), LaplaceSample(1.3, b));
  }
}

TEST(NoiseSpecTest, ScaleAndVariance) {
  const NoiseSpec spec = NoiseSpec::ForConfig(Config(2.0, 3.0));
  EXPECT_DOUBLE_EQ(spec.scale, 1.5);
  EXPECT_DOUBLE_EQ(spec.Variance(), 4.5);
}

TEST(PerturbTest, CenteredOnValue) {
  Rng rng(8);
  double sum = 0.0;
  constexpr int kTrials = 100000;
  for (int i = 0; i < kTrials; ++i) sum += Perturb(5.0, Config(1.0, 1.0), rng);
  EXPECT_NEAR(sum / kTrials, 5.0, 0.02);
}

// Density ratio of Lap(d, 1) and Lap(d', 1) at x, for |d - d'| = 1.
TEST(PerturbTest, DensityRatioBounded) {
  for (double x = -5.0; x <= 5.0; x += 0.125) {
    const double ratio = std::exp(std::fabs(x - 1.0) - std::fabs(x - 0.0));
    EXPECT_LE(ratio, std::exp(1.0) * (1 + 1e-12));
  }
}

TEST(VerifyLdpTest, Examples) {
  EXPECT_TRUE(VerifyLdp(1.0, 1.0, 1.0));
  EXPECT_FALSE(VerifyLdp(0.5, 1.0, 1.0));
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double zeta = rng.Uniform(0.01, 10.0);
    const double eps = rng.Uniform(0.01, 10.0);
    EXPECT_TRUE(VerifyLdp(zeta / eps, zeta, eps));
  }
}

TEST(AggregateTest, Examples) {
  const std::vector<double> one = {3.0};
  const std::vector<double> three = {1.0, 2.0, 3.0};
  EXPECT_EQ(Aggregate(one), 3.0);
  EXPECT_DOUBLE_EQ(Aggregate(three), 2.0);
  try {
    Aggregate(std::vector<double>{});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAggregation);
  }
}

TEST(AggregateTest, ErrorIsMeanOfNoise) {
  Rng rng(4);
  std::vector<double> raw;
  for (int i = 0; i < 50; ++i) raw.push_back(rng.Uniform(0.0, 1.0));
  Rng a(99);
  const AggregationResult result = AggregateReports(raw, Config(1.0, 1.0), a);
  Rng b(99);
  double noise = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) noise += LaplaceSample(1.0, b);
  EXPECT_NEAR(result.true_mean, Aggregate(raw), 1e-12);
  EXPECT_NEAR(result.estimate - result.true_mean, noise / raw.size(), 1e-12);
  EXPECT_DOUBLE_EQ(result.abs_error,
                   std::fabs(result.estimate - result.true_mean));
}

TEST(EmpiricalAccuracyTest, PreconditionsEnforced) {
  Rng rng(1);
  const AccuracySpec spec{1.0, 0.2};
  const EngineConfig config = Config(1.0, 1.0);
  try {
    EmpiricalAccuracy(9, spec, config, 100000, rng);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
  EXPECT_THROW(EmpiricalAccuracy(10, spec, config, 9999, rng), Error);
}

TEST(EmpiricalAccuracyTest, WellBelowDeltaAtRequirement) {
  Rng rng(6);
  const double f =
      EmpiricalAccuracy(10, {1.0, 0.2}, Config(1.0, 1.0), 100000, rng);
  EXPECT_LE(f, 0.2);
  // The tail of a mean of ten Laplace(1) draws beyond 1 is about 0.025.
  EXPECT_LT(f, 0.05);
}

TEST(EmpiricalAccuracyTest, VanishesWithManyWinners) {
  Rng rng(6);
  const double f =
      EmpiricalAccuracy(400, {1.0, 0.2}, Config(1.0, 1.0), 10000, rng);
  EXPECT_EQ(f, 0.0);
}

}  // namespace
}  // namespace lepa::privacy
