// Copyright 2026 The strictrd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "strictrd/error.h"
#include "strictrd/installability.h"
#include "strictrd/verifier.h"
#include "strictrd/witness.h"
#include "test_support.h"

namespace strictrd {
namespace {

using ::strictrd::testing::SigmaCorr;
using ::strictrd::testing::SigmaEx;

GapReport VerifyNormalForm(const NormalFormGame& u,
                           const JointMixedStrategy& sigma, Concept solution,
                           DeviationClass deviation_class =
                               DeviationClass::kUnrestricted,
                           double epsilon = 0.0) {
  return CheckStrict(MarkovGameSkeleton::NormalForm(sigma.shape()),
                     EmbedUtility(u, 1e6).rewards,
                     MarkovPolicy::FromStrategy(sigma), solution,
                     deviation_class, epsilon);
}

TEST(CheckStrictTest, SigmaCorrWitness) {
  const NormalFormGame w = WitnessUtility(SigmaCorr());
  const GapReport ce = VerifyNormalForm(w, SigmaCorr(), Concept::kCorrelated);
  EXPECT_DOUBLE_EQ(ce.min_gap, 1.0);
  EXPECT_EQ(ce.entries.size(), 4u);
  EXPECT_TRUE(ce.strict);
  EXPECT_TRUE(ce.near_identity_deviations);
  const GapReport cce =
      VerifyNormalForm(w, SigmaCorr(), Concept::kCoarseCorrelated);
  EXPECT_DOUBLE_EQ(cce.min_gap, 0.5);
  EXPECT_EQ(cce.entries.size(), 4u);
  EXPECT_FALSE(cce.near_identity_deviations);

  const MarkovGameSkeleton g = MarkovGameSkeleton::NormalForm(ActionShape({2, 2}));
  const RewardFunction r = EmbedUtility(w, 1.0);
  const MarkovPolicy pi = MarkovPolicy::FromStrategy(SigmaCorr());
  const DeviationValues br =
      BestResponse(g, r.rewards, pi, 0, DeviationClass::kUnrestricted);
  EXPECT_DOUBLE_EQ(br.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(PolicyEvaluation(g, r.rewards, pi).V(0, 0, 0), 1.0);
}

TEST(CheckStrictTest, EpsilonVerdicts) {
  const NormalFormGame w = WitnessUtility(SigmaCorr());
  EXPECT_TRUE(VerifyNormalForm(w, SigmaCorr(), Concept::kCoarseCorrelated,
                               DeviationClass::kUnrestricted, 0.5)
                  .strict);
  EXPECT_FALSE(VerifyNormalForm(w, SigmaCorr(), Concept::kCoarseCorrelated,
                                DeviationClass::kUnrestricted, 0.6)
                   .strict);
  // Mixtures of the recommendation and a swap have gaps tending to 0.
  const GapReport ce = VerifyNormalForm(w, SigmaCorr(), Concept::kCorrelated,
                                        DeviationClass::kUnrestricted, 0.5);
  EXPECT_FALSE(ce.strict);
  EXPECT_DOUBLE_EQ(ce.min_gap, 1.0);

  const JointMixedStrategy pure =
      JointMixedStrategy::PointMass(ActionShape({2, 2}), std::vector<int>{0, 0});
  const NormalFormGame nash = EpsilonWitness(
      pure, {1.0, 1.0, DeviationClass::kNeverTarget}, Concept::kNash);
  EXPECT_TRUE(VerifyNormalForm(nash, pure, Concept::kNash,
                               DeviationClass::kNeverTarget, 1.0)
                  .strict);
  const GapReport loose = VerifyNormalForm(nash, pure, Concept::kNash,
                                           DeviationClass::kUnrestricted, 1.0);
  EXPECT_TRUE(loose.near_identity_deviations);
  EXPECT_FALSE(loose.strict);
  EXPECT_TRUE(VerifyNormalForm(nash, pure, Concept::kNash).strict);
}

TEST(CheckStrictTest, SigmaExCoarseButNotCorrelated) {
  const JointMixedStrategy sigma = SigmaEx();
  const NormalFormGame w = WitnessUtility(sigma);
  const GapReport cce = VerifyNormalForm(w, sigma, Concept::kCoarseCorrelated);
  EXPECT_NEAR(cce.min_gap, GammaCoarseCorrelated(sigma).value, 1e-12);
  EXPECT_TRUE(cce.strict);
  const GapReport ce = VerifyNormalForm(w, sigma, Concept::kCorrelated);
  EXPECT_NEAR(ce.min_gap, 0.0, 1e-15);
  EXPECT_FALSE(ce.strict);
  EXPECT_EQ(ce.argmin.player, 0);
}

TEST(CheckStrictTest, ConstantUtilityHasZeroGaps) {
  const ActionShape shape({2, 3});
  const NormalFormGame u = NormalFormGame::Create(
      shape, std::vector<double>(2 * shape.num_joint(), 0.7));
  const JointMixedStrategy sigma = JointMixedStrategy::Uniform(shape);
  for (Concept c : {Concept::kNash, Concept::kCorrelated,
                    Concept::kCoarseCorrelated}) {
    const GapReport r = VerifyNormalForm(u, sigma, c);
    for (const GapEntry& e : r.entries) EXPECT_NEAR(e.gap, 0.0, 1e-15);
    EXPECT_FALSE(r.strict);
  }
}

TEST(CheckStrictTest, Preconditions) {
  const NormalFormGame w = WitnessUtility(SigmaCorr());
  EXPECT_THROW(VerifyNormalForm(w, SigmaCorr(), Concept::kNash), Error);
  try {
    VerifyNormalForm(w, SigmaCorr(), Concept::kCoarseCorrelated,
                     DeviationClass::kNeverRecommended);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
  EXPECT_THROW(VerifyNormalForm(w, SigmaCorr(), Concept::kCoarseCorrelated,
                                DeviationClass::kUnrestricted, -1.0),
               Error);
  const MarkovGameSkeleton g = MarkovGameSkeleton::NormalForm(ActionShape({2, 2}));
  EXPECT_THROW(CheckStrict(g, RewardTensor::Zero(2, 2, 1, 4),
                           MarkovPolicy::FromStrategy(SigmaCorr()),
                           Concept::kCoarseCorrelated),
               Error);
}

TEST(CheckStrictTest, NoDeviationsMeansInfiniteGap) {
  const ActionShape shape({1, 1});
  const GapReport r =
      VerifyNormalForm(NormalFormGame::Zero(shape),
                       JointMixedStrategy::Uniform(shape),
                       Concept::kCoarseCorrelated);
  EXPECT_TRUE(r.entries.empty());
  EXPECT_TRUE(std::isinf(r.min_gap));
  EXPECT_TRUE(r.strict);
}

TEST(NormalFormOracleTest, AgreesWithBackwardInduction) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const ActionShape shape(trial % 2 == 0 ? std::vector<int>{3, 2}
                                           : std::vector<int>{2, 2, 2});
    std::vector<double> util(shape.num_players() * shape.num_joint());
    for (double& x : util) x = unif(rng);
    const NormalFormGame u = NormalFormGame::Create(shape, util);
    const Concept c = static_cast<Concept>(trial % 3);
    const JointMixedStrategy sigma =
        c == Concept::kNash ? testing::RandomProduct(rng, shape, 0.3)
                            : testing::RandomStrategy(rng, shape, 0.3);
    const GapReport a = NormalFormOracle(u, sigma, c);
    const GapReport b = VerifyNormalForm(u, sigma, c);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
      EXPECT_EQ(a.entries[k].player, b.entries[k].player);
      EXPECT_EQ(a.entries[k].recommended, b.entries[k].recommended);
      EXPECT_EQ(a.entries[k].deviation, b.entries[k].deviation);
      EXPECT_NEAR(a.entries[k].gap, b.entries[k].gap, 1e-12);
    }
    EXPECT_EQ(a.strict, b.strict);
  }
}

TEST(VisitationTest, MatchesSampledEpisodes) {
  std::mt19937_64 rng(31);
  const MarkovGameSkeleton game =
      testing::RandomGame(rng, ActionShape({2, 2}), 3, 3);
  const MarkovPolicy pi = testing::RandomPolicy(rng, game, 0.2);
  const Visitation mu = ComputeVisitation(game, pi);
  const int episodes = 200000;
  const std::vector<double> freq =
      testing::SampleVisitation(rng, game, pi, episodes);
  for (std::size_t k = 0; k < freq.size(); ++k) {
    const double p = mu.mu[k];
    const double sd = std::sqrt(p * (1.0 - p) / episodes);
    EXPECT_LE(std::abs(freq[k] - p), 4.0 * sd + 1e-12) << "cell " << k;
  }
  for (int h = 0; h < game.horizon(); ++h) {
    double total = 0.0;
    for (int s = 0; s < game.num_states(); ++s) {
      for (std::size_t a = 0; a < game.num_joint(); ++a) total += mu.at(h, s, a);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

// Value of `player` when it follows `own[h * S + s]` while the opponents
// keep their on-path marginals.
ValueTables DeviationValuesOf(const MarkovGameSkeleton& game,
                              const RewardTensor& r, const MarkovPolicy& pi,
                              int player,
                              const std::vector<std::vector<double>>& own) {
  std::vector<JointMixedStrategy> stages;
  for (int h = 0; h < game.horizon(); ++h) {
    for (int s = 0; s < game.num_states(); ++s) {
      stages.push_back(testing::Unilateral(
          pi.stage(h, s), player,
          own[static_cast<std::size_t>(h) * game.num_states() + s]));
    }
  }
  return PolicyEvaluation(
      game, r,
      MarkovPolicy::Create(game.horizon(), game.num_states(), stages, false));
}

TEST(BestResponseTest, DominatesRandomDeviationsAndIsAttained) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const MarkovGameSkeleton game =
        testing::RandomGame(rng, ActionShape({2, 3}), 2, 3);
    const MarkovPolicy pi = testing::RandomPolicy(rng, game, 0.3);
    const RewardTensor r = testing::RandomRewards(rng, game, 1.0);
    for (int i = 0; i < 2; ++i) {
      const DeviationValues br =
          BestResponse(game, r, pi, i, DeviationClass::kUnrestricted);
      const int cells = game.horizon() * game.num_states();
      for (int d = 0; d < 50; ++d) {
        std::vector<std::vector<double>> own;
        for (int c = 0; c < cells; ++c) {
          own.push_back(testing::RandomDistribution(
              rng, game.shape().num_actions(i), 0.3));
        }
        const ValueTables v = DeviationValuesOf(game, r, pi, i, own);
        for (int h = 0; h < game.horizon(); ++h) {
          for (int s = 0; s < game.num_states(); ++s) {
            EXPECT_LE(v.V(i, h, s), br.at(h, s) + 1e-12);
          }
        }
      }
      std::vector<std::vector<double>> pure;
      for (int c = 0; c < cells; ++c) {
        std::vector<double> p(game.shape().num_actions(i), 0.0);
        p[br.action[c]] = 1.0;
        pure.push_back(p);
      }
      const ValueTables v = DeviationValuesOf(game, r, pi, i, pure);
      for (int h = 0; h < game.horizon(); ++h) {
        for (int s = 0; s < game.num_states(); ++s) {
          EXPECT_NEAR(v.V(i, h, s), br.at(h, s), 1e-12);
        }
      }
    }
  }
}

TEST(CheckStrictTest, SwapDeviationsDecomposeIntoGaps) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const MarkovGameSkeleton game =
        testing::RandomGame(rng, ActionShape({3, 2}), 2, 3);
    const MarkovPolicy pi = testing::RandomPolicy(rng, game, 0.3);
    const RewardTensor r = testing::RandomRewards(rng, game, 1.0);
    const GapReport report = CheckStrict(game, r, pi, Concept::kCorrelated);
    std::map<std::tuple<int, int, int, int, int>, double> gap;
    for (const GapEntry& e : report.entries) {
      gap[{e.player, e.stage, e.state, e.recommended, e.deviation}] = e.gap;
    }
    for (int i = 0; i < 2; ++i) {
      const int n = game.shape().num_actions(i);
      std::vector<JointMixedStrategy> stages;
      std::vector<std::vector<int>> phis;
      for (int h = 0; h < game.horizon(); ++h) {
        for (int s = 0; s < game.num_states(); ++s) {
          std::vector<int> phi(n);
          for (int& x : phi) x = std::uniform_int_distribution<int>(0, n - 1)(rng);
          stages.push_back(testing::Swapped(pi.stage(h, s), i, phi));
          phis.push_back(phi);
        }
      }
      const MarkovPolicy dev = MarkovPolicy::Create(
          game.horizon(), game.num_states(), stages, false);
      const double loss =
          InitialValues(game, PolicyEvaluation(game, r, pi))[i] -
          InitialValues(game, PolicyEvaluation(game, r, dev))[i];
      const Visitation mu = ComputeVisitation(game, dev);
      double expected = 0.0;
      for (int h = 0; h < game.horizon(); ++h) {
        for (int s = 0; s < game.num_states(); ++s) {
          double reach = 0.0;
          for (std::size_t a = 0; a < game.num_joint(); ++a) {
            reach += mu.at(h, s, a);
          }
          const std::vector<int>& phi =
              phis[static_cast<std::size_t>(h) * game.num_states() + s];
          const std::vector<double> mass = pi.stage(h, s).Marginal(i);
          for (int j = 0; j < n; ++j) {
            if (mass[j] > 0.0 && phi[j] != j) {
              expected += reach * mass[j] * gap.at({i, h, s, j, phi[j]});
            }
          }
        }
      }
      EXPECT_NEAR(loss, expected, 1e-10);
    }
  }
}

TEST(EvaluateCostTest, HandComputed) {
  const ActionShape shape({2, 2});
  RewardTensor base = RewardTensor::Zero(2, 1, 1, 4);
  const MarkovGameSkeleton game =
      MarkovGameSkeleton::Create(shape, 1, 1, std::vector<double>(4, 1.0),
                                 {1.0}, base);
  const MarkovPolicy pi = MarkovPolicy::FromStrategy(SigmaCorr());
  RewardTensor r = RewardTensor::Zero(2, 1, 1, 4);
  r.data = {1, 0, -0.5, 1, 0.25, 0, 0, -1};
  EXPECT_DOUBLE_EQ(EvaluateCost(game, pi, r, {CostKind::kOffline, {}}), 3.75);
  EXPECT_DOUBLE_EQ(EvaluateCost(game, pi, r, {CostKind::kOnline, {}}),
                   0.5 * (1 + 1 + 0.25 + 1));
  EXPECT_DOUBLE_EQ(EvaluateCost(game, pi, r, {CostKind::kSocialWelfare, {}}),
                   -(1.0 + -0.375));
  EXPECT_DOUBLE_EQ(EvaluateCost(game, pi, r, {CostKind::kEgalitarian, {}}),
                   0.375);
  const MarkovGameSkeleton bare = MarkovGameSkeleton::NormalForm(shape);
  EXPECT_THROW(EvaluateCost(bare, pi, r, {CostKind::kOffline, {}}), Error);
  EXPECT_DOUBLE_EQ(EvaluateCost(bare, pi, r, {CostKind::kOffline, base}), 3.75);
}

TEST(AllowedActionsTest, Classes) {
  const JointMixedStrategy pm =
      JointMixedStrategy::PointMass(ActionShape({3, 2}), std::vector<int>{1, 0});
  EXPECT_EQ(AllowedActions(pm, 0, DeviationClass::kUnrestricted),
            (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(AllowedActions(pm, 0, DeviationClass::kNeverTarget),
            (std::vector<int>{0, 2}));
  EXPECT_EQ(AllowedActions(pm, 0, DeviationClass::kNeverRecommended),
            (std::vector<int>{0, 2}));
  EXPECT_EQ(AllowedActions(SigmaEx(), 1, DeviationClass::kNeverTarget),
            (std::vector<int>{0, 1}));
  EXPECT_TRUE(
      AllowedActions(SigmaEx(), 1, DeviationClass::kNeverRecommended).empty());
}

}  // namespace
}  // namespace strictrd
