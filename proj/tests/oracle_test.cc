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

#include "lepa/oracle.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "lepa/error.hpp"
#include "lepa/random.hpp"
#include "test_util.hpp"

namespace lepa::oracle {
namespace {

using ::lepa::auction::SlotInstance;
using ::lepa::testing::MakeBid;
using ::lepa::testing::MakeRequirementTask;
using ::lepa::testing::TwoUserInstance;

TEST(BruteForceTest, TwoUserExample) {
  const CoverSolution p = BruteForceOtpm(TwoUserInstance());
  EXPECT_DOUBLE_EQ(p.value, 1.5);
  EXPECT_EQ(p.chosen, std::vector<UserId>{1});
}

TEST(BruteForceTest, QueueMakesPricierUserOptimal) {
  const CoverSolution p = BruteForceOtpm(TwoUserInstance(0.0, 2.0));
  EXPECT_DOUBLE_EQ(p.value, 0.5);
  EXPECT_EQ(p.chosen, std::vector<UserId>{2});
}

TEST(BruteForceTest, EmptyRequirements) {
  SlotInstance instance = TwoUserInstance();
  instance.tasks[0].requirement = 0;
  const CoverSolution p = BruteForceOtpm(instance);
  EXPECT_EQ(p.value, 0.0);
  EXPECT_TRUE(p.chosen.empty());
}

TEST(BruteForceTest, ShiftedProblem) {
  EXPECT_DOUBLE_EQ(BruteForceOtcm(TwoUserInstance()).value, 1.5);
  const SlotInstance instance = TwoUserInstance(0.0, 2.0);
  EXPECT_DOUBLE_EQ(QueueShift(instance), 2.0);
  EXPECT_DOUBLE_EQ(BruteForceOtcm(instance).value, 2.5);
}

TEST(BruteForceTest, Errors) {
  SlotInstance instance = TwoUserInstance();
  instance.tasks[0].requirement = 3;
  try {
    BruteForceOtpm(instance);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
  SlotInstance big = TwoUserInstance();
  big.bids.clear();
  big.queues.clear();
  for (UserId i = 0; i < 21; ++i) {
    big.bids.push_back(MakeBid(i, {0}, 1.0, 1.0));
    big.queues.push_back(0.0);
  }
  try {
    BruteForceOtpm(big);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeLimit);
  }
}

TEST(HarmonicTest, Values) {
  EXPECT_EQ(Harmonic(0), 0.0);
  EXPECT_EQ(Harmonic(1), 1.0);
  EXPECT_DOUBLE_EQ(Harmonic(3), 1.0 + 0.5 + 1.0 / 3.0);
}

TEST(CertifyBoundTest, TwoUserExample) {
  const BoundCertificate c = CertifyBound(TwoUserInstance());
  EXPECT_DOUBLE_EQ(c.mechanism_payment, 2.5);
  EXPECT_DOUBLE_EQ(c.p_star, 1.5);
  EXPECT_EQ(c.m, 0.0);
  EXPECT_EQ(c.theta, 1);
  EXPECT_EQ(c.d, 1);
  EXPECT_EQ(c.harmonic_d, 1.0);
  EXPECT_DOUBLE_EQ(c.delta_ratio, 2.5 / 1.5);
  EXPECT_DOUBLE_EQ(c.bound_value, 5.0);
  EXPECT_TRUE(c.passed);
  EXPECT_TRUE(c.lemma_holds);
  EXPECT_DOUBLE_EQ(c.setter_delta_ratio, 1.0);
  EXPECT_TRUE(c.setter_bound_holds);
}

TEST(CertifyBoundTest, EmptyWinnerSet) {
  SlotInstance instance = TwoUserInstance();
  instance.tasks[0].requirement = 0;
  const BoundCertificate c = CertifyBound(instance);
  EXPECT_EQ(c.mechanism_payment, 0.0);
  EXPECT_TRUE(c.passed);
}

TEST(CertifyBoundTest, MonopolistIsDegenerate) {
  SlotInstance instance = TwoUserInstance();
  instance.bids.pop_back();
  instance.queues.pop_back();
  try {
    CertifyBound(instance);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateRatio);
  }
}

TEST(OracleCrossCheckTest, BranchAndBoundAgreesWithEnumeration) {
  Rng rng(100);
  InstanceOptions options;
  options.max_n = 12;
  options.max_k = 5;
  for (int t = 0; t < 100; ++t) {
    const SlotInstance instance = RandomInstance(options, rng);
    const CoverSolution a = BruteForceOtpm(instance);
    const CoverSolution b = BranchAndBoundOtpm(instance);
    EXPECT_NEAR(a.value, b.value, 1e-9) << "instance " << t;
  }
}

TEST(OracleCrossCheckTest, OptimumNeverExceedsMechanism) {
  Rng rng(101);
  InstanceOptions options;
  for (int t = 0; t < 200; ++t) {
    const SlotInstance instance = RandomInstance(options, rng);
    const SlotOutcome outcome = auction::SelectAndPay(instance);
    double virtual_total = 0.0;
    for (UserId id : outcome.winners) {
      const int pos = instance.IndexOf(id);
      virtual_total += auction::VirtualCost(instance.bids[pos],
                                            instance.queues[pos],
                                            instance.config);
    }
    EXPECT_LE(BruteForceOtpm(instance).value, virtual_total + 1e-9);
  }
}

TEST(CertifyBoundTest, RandomInstancesSatisfyAllInequalities) {
  Rng rng(7);
  InstanceOptions options;
  options.max_n = 10;
  options.max_k = 5;
  int certified = 0;
  for (int t = 0; t < 200; ++t) {
    const SlotInstance instance = RandomInstance(options, rng);
    BoundCertificate c;
    try {
      c = CertifyBound(instance);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kDegenerateRatio);
      continue;
    }
    ++certified;
    EXPECT_TRUE(c.lemma_holds) << t;
    EXPECT_LE(c.m_star, c.p_star + c.m * c.n + 1e-9);
    EXPECT_TRUE(c.greedy_bound_holds) << t;
    EXPECT_TRUE(c.passed) << t;
    EXPECT_NEAR(c.harmonic_d, Harmonic(c.d), 1e-12);
    EXPECT_NEAR(c.m, QueueShift(instance), 0.0);
  }
  EXPECT_GT(certified, 150);
}

TEST(TruthfulnessProbeTest, OverbidGainsNothing) {
  const SlotInstance instance = TwoUserInstance();
  std::vector<Bid> misreports = {MakeBid(1, {0}, 2.0, 0.5),
                                 MakeBid(1, {0}, 0.0, 0.0)};
  EXPECT_TRUE(TruthfulnessProbe(instance, 1, misreports).empty());
}

TEST(TruthfulnessProbeTest, UnderbiddingOnlyBuysLosses) {
  const SlotInstance instance = TwoUserInstance();
  // u2 (cost 2.5) underbids to win at a price below her cost.
  std::vector<Bid> misreports;
  for (double b = 0.0; b <= 4.0; b += 0.05) {
    misreports.push_back(MakeBid(2, {0}, b, 0.5));
  }
  EXPECT_TRUE(TruthfulnessProbe(instance, 2, misreports).empty());
}

TEST(TruthfulnessProbeTest, DetectsAProfitableDeviation) {
  // A mechanism that pays winners their own bid doubled rewards overbids.
  const SlotInstance instance = TwoUserInstance();
  const Mechanism pay_as_bid = [](const SlotInstance& slot) {
    SlotOutcome outcome = auction::SelectAndPay(slot);
    for (auto& [id, p] : outcome.payments) {
      p = 2.0 * slot.bids[slot.IndexOf(id)].DeclaredCost(slot.config.epsilon);
    }
    return outcome;
  };
  std::vector<Bid> misreports = {MakeBid(1, {0}, 1.9, 0.5)};
  EXPECT_EQ(TruthfulnessProbe(instance, 1, misreports, pay_as_bid).size(), 1u);
}

TEST(TruthfulnessProbeTest, CapabilitySubsetsNeverHelp) {
  Rng rng(55);
  InstanceOptions options;
  for (int t = 0; t < 100; ++t) {
    const SlotInstance instance = RandomInstance(options, rng);
    for (const Bid& truth : instance.bids) {
      std::vector<Bid> subsets;
      const auto& cap = truth.declared_capability;
      for (unsigned mask = 1; mask < (1u << cap.size()); ++mask) {
        Bid b = truth;
        b.declared_capability.clear();
        for (std::size_t j = 0; j < cap.size(); ++j) {
          if (mask & (1u << j)) b.declared_capability.push_back(cap[j]);
        }
        subsets.push_back(b);
      }
      EXPECT_TRUE(TruthfulnessProbe(instance, truth.user_id, subsets).empty());
    }
  }
}

TEST(RandomInstanceTest, RespectsOptions) {
  Rng rng(9);
  InstanceOptions options;
  for (int t = 0; t < 200; ++t) {
    const SlotInstance instance = RandomInstance(options, rng);
    EXPECT_GE(static_cast<int>(instance.bids.size()), options.min_n);
    EXPECT_LE(static_cast<int>(instance.bids.size()), options.max_n);
    EXPECT_LE(static_cast<int>(instance.tasks.size()), options.max_k);
    EXPECT_NO_THROW(instance.Validate());
    for (std::size_t i = 0; i < instance.bids.size(); ++i) {
      EXPECT_GT(auction::VirtualCost(instance.bids[i], instance.queues[i],
                                     instance.config),
                0.0);
    }
    EXPECT_TRUE(auction::SelectAndPay(instance).monopolists.empty());
  }
}

}  // namespace
}  // namespace lepa::oracle
