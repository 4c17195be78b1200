#include <gtest/gtest.h>

#include "sdm/environment.hpp"
#include "sdm/generators.hpp"
#include "sdm/rng.hpp"
#include "sdm/strategy.hpp"
#include "support.hpp"

using namespace sdm;

TEST(MatchOutcome, LowestIndexWins) {
  const std::vector<ArmId> choices{2, 0, 2, 0, 1};
  const auto w = match_outcome(choices, 4);
  EXPECT_EQ(w[0], AgentId{1});
  EXPECT_EQ(w[1], AgentId{4});
  EXPECT_EQ(w[2], AgentId{0});
  EXPECT_FALSE(w[3].has_value());
}

TEST(MatchOutcome, AgreesWithPairwiseOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto [n, k] = oracle::random_shape(rng, 6, 6);
    std::uniform_int_distribution<ArmId> arm(0, k - 1);
    std::vector<ArmId> c(n);
    for (auto& a : c) a = arm(rng);
    const auto w = match_outcome(c, k);
    const auto expect = oracle::brute_matched(c);
    for (AgentId j = 0; j < n; ++j) EXPECT_EQ(w[c[j]] == j, expect[j]);
  }
}

TEST(Environment, BlockedAgentsGetZeroAndSameSeedReplays) {
  const auto inst = gen_osb(3, 4, 1);
  Environment a(inst, 99), b(inst, 99), c(inst, 100);
  const std::vector<ArmId> choices{1, 1, 3};
  bool differs = false;
  for (int t = 0; t < 200; ++t) {
    const auto fa = a.step(choices);
    const auto fb = b.step(choices);
    const auto fc = c.step(choices);
    EXPECT_TRUE(fa.agents[0].matched);
    EXPECT_FALSE(fa.agents[1].matched);
    EXPECT_EQ(fa.agents[1].reward, 0.0);
    EXPECT_TRUE(fa.agents[2].matched);
    for (AgentId j = 0; j < 3; ++j) EXPECT_EQ(fa.agents[j].reward, fb.agents[j].reward);
    differs |= fa.agents[0].reward != fc.agents[0].reward;
  }
  EXPECT_TRUE(differs);
}

TEST(RewardStreams, PerPairStreamsAreIndependentOfOtherDraws) {
  // Drawing from (0,0) must not shift the sequence seen on (1,2).
  RewardStreams x(7, 2, 3), y(7, 2, 3);
  for (int i = 0; i < 50; ++i) x.draw(0, 0, 0.5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(x.draw(1, 2, 0.3), y.draw(1, 2, 0.3));
}

TEST(RewardStreams, EmpiricalMean) {
  RewardStreams s(3, 1, 1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) sum += s.draw(0, 0, 0.37);
  EXPECT_NEAR(sum / 100000, 0.37, 0.005);
}

TEST(Seeds, DeriveSeedSeparatesArguments) {
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

TEST(SlotClock, RejectsSkew) {
  SlotClock c;
  EXPECT_THROW(c.on_observe(1), ClockSkew);
  c.on_act(1);
  EXPECT_THROW(c.on_act(1), ClockSkew);
  c.on_observe(1);
  EXPECT_THROW(c.on_act(3), ClockSkew);
  c.on_act(2);
  EXPECT_NO_THROW(c.on_observe(2));
}
