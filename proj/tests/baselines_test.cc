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

#include "lepa/baselines.hpp"

#include <algorithm>
#include <map>

#include "gtest/gtest.h"
#include "lepa/auction.hpp"
#include "lepa/oracle.hpp"
#include "lepa/random.hpp"
#include "test_util.hpp"

namespace lepa::baselines {
namespace {

using ::lepa::auction::SlotInstance;
using ::lepa::testing::MakeBid;
using ::lepa::testing::MakeRequirementTask;
using ::lepa::testing::TwoUserInstance;

TEST(StaticSlotTest, IgnoresQueues) {
  // LEPA prefers u2 on its backlog; the static auction still picks u1.
  const SlotInstance instance = TwoUserInstance(0.0, 2.0);
  EXPECT_EQ(auction::SelectAndPay(instance).winners, std::vector<UserId>{2});
  const SlotOutcome outcome = StaticSlot(instance);
  EXPECT_EQ(outcome.winners, std::vector<UserId>{1});
  EXPECT_DOUBLE_EQ(outcome.PaymentOf(1), 2.5);
  // Queues still evolve.
  EXPECT_DOUBLE_EQ(outcome.queues_after.at(2), 2.2);
}

TEST(StaticSlotTest, CoincidesWithLepaAtEmptyQueues) {
  Rng rng(12);
  oracle::InstanceOptions options;
  for (int t = 0; t < 200; ++t) {
    SlotInstance instance = oracle::RandomInstance(options, rng);
    std::fill(instance.queues.begin(), instance.queues.end(), 0.0);
    const SlotOutcome a = StaticSlot(instance);
    const SlotOutcome b = auction::SelectAndPay(instance);
    EXPECT_EQ(a.winners, b.winners);
    EXPECT_EQ(a.payments, b.payments);
  }
}

TEST(StaticSlotTest, DominatedBidderNeverSelected) {
  SlotInstance instance = TwoUserInstance();
  instance.bids.push_back(MakeBid(3, {0}, 1.5, 0.5));
  instance.queues.push_back(0.0);
  for (int t = 0; t < 100; ++t) {
    const SlotOutcome outcome = StaticSlot(instance);
    EXPECT_FALSE(outcome.IsWinner(2));
    for (std::size_t i = 0; i < instance.bids.size(); ++i) {
      instance.queues[i] = outcome.queues_after.at(instance.bids[i].user_id);
    }
  }
}

TEST(CompulsoryStateTest, DeadlineIsCeilingOfInverseRate) {
  EXPECT_EQ(CompulsoryState::ForRate(0.2).deadline, 5);
  EXPECT_EQ(CompulsoryState::ForRate(0.3).deadline, 4);
  EXPECT_EQ(CompulsoryState::ForRate(0.5).deadline, 2);
}

TEST(CompulsorySlotTest, ForcesOverdueUser) {
  const SlotInstance instance = TwoUserInstance();
  CompulsoryState state = CompulsoryState::ForRate(0.2);
  state.slots_since_selected[2] = 4;
  const SlotOutcome outcome = CompulsorySlot(instance, state);
  EXPECT_TRUE(outcome.IsWinner(2));
  EXPECT_EQ(outcome.forced, std::vector<UserId>{2});
  // Paid the declared cost; the forced pick covers the only task.
  EXPECT_DOUBLE_EQ(outcome.PaymentOf(2), 2.5);
  EXPECT_FALSE(outcome.IsWinner(1));
  EXPECT_EQ(state.SlotsSinceSelected(2), 0);
  EXPECT_EQ(state.SlotsSinceSelected(1), 1);
}

// Three single-task bidders, one winner needed per slot: the rotation forced
// by the deadline costs more than LEPA on the same bids.
TEST(CompulsorySlotTest, RotationCostsMoreThanLepa) {
  SlotInstance instance;
  instance.config.participation_rate = 0.2;
  instance.config.gamma = 1.0;
  instance.tasks = {MakeRequirementTask(0, 1)};
  instance.bids = {MakeBid(0, {0}, 1.0, 0.1), MakeBid(1, {0}, 1.1, 0.1),
                   MakeBid(2, {0}, 3.0, 0.1)};
  instance.queues = {0.0, 0.0, 0.0};
  SlotInstance lepa = instance;
  CompulsoryState state = CompulsoryState::ForRate(0.2);
  double compulsory_total = 0.0;
  double lepa_total = 0.0;
  std::map<UserId, long> gaps;
  for (int t = 0; t < 100; ++t) {
    const SlotOutcome c = CompulsorySlot(instance, state);
    compulsory_total += TotalPayment(c);
    for (const Bid& bid : instance.bids) {
      EXPECT_LT(state.SlotsSinceSelected(bid.user_id), state.deadline);
    }
    const SlotOutcome l = auction::RunSlot(lepa);
    lepa_total += TotalPayment(l);
    for (std::size_t i = 0; i < lepa.bids.size(); ++i) {
      lepa.queues[i] = l.queues_after.at(lepa.bids[i].user_id);
    }
  }
  EXPECT_GT(compulsory_total, lepa_total);
}

TEST(CompulsorySlotTest, NoForcingReducesToStatic) {
  Rng rng(21);
  oracle::InstanceOptions options;
  for (int t = 0; t < 100; ++t) {
    const SlotInstance instance = oracle::RandomInstance(options, rng);
    CompulsoryState state;
    state.deadline = 1000000;
    const SlotOutcome a = CompulsorySlot(instance, state);
    const SlotOutcome b = StaticSlot(instance);
    EXPECT_EQ(a.winners, b.winners);
    EXPECT_EQ(a.payments, b.payments);
    EXPECT_TRUE(a.forced.empty());
  }
}

TEST(CompulsorySlotTest, GapNeverExceedsDeadlineAndIsRational) {
  Rng rng(5);
  oracle::InstanceOptions options;
  for (int t = 0; t < 50; ++t) {
    const SlotInstance instance = oracle::RandomInstance(options, rng);
    CompulsoryState state = CompulsoryState::ForRate(0.25);
    std::map<UserId, int> last;
    for (int slot = 0; slot < 40; ++slot) {
      const SlotOutcome outcome = CompulsorySlot(instance, state);
      for (const Bid& bid : instance.bids) {
        if (outcome.IsWinner(bid.user_id)) {
          const int prev = last.count(bid.user_id) ? last[bid.user_id] : -1;
          EXPECT_LE(slot - prev, state.deadline);
          last[bid.user_id] = slot;
          EXPECT_GE(outcome.PaymentOf(bid.user_id) -
                        bid.DeclaredCost(instance.config.epsilon),
                    -1e-12);
        }
      }
    }
    for (const Bid& bid : instance.bids) {
      EXPECT_GE(last.count(bid.user_id), 1u);
    }
  }
}

}  // namespace
}  // namespace lepa::baselines
