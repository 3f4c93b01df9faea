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
#include <functional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "strictrd/concepts.h"
#include "strictrd/error.h"
#include "strictrd/game.h"
#include "test_support.h"

namespace strictrd {
namespace {

using ::strictrd::testing::SigmaCorr;
using ::strictrd::testing::SigmaEx;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

TEST(ActionShapeTest, RowMajorEncoding) {
  const ActionShape shape({3, 2, 2});
  EXPECT_EQ(shape.num_joint(), 12u);
  EXPECT_EQ(shape.Encode(std::vector<int>{1, 0, 1}), 5u);
  EXPECT_EQ(shape.Decode(11), (std::vector<int>{2, 1, 1}));
  for (std::size_t a = 0; a < shape.num_joint(); ++a) {
    EXPECT_EQ(shape.Encode(shape.Decode(a)), a);
    for (int i = 0; i < 3; ++i) {
      const std::size_t o = shape.OpponentIndex(a, i);
      EXPECT_LT(o, shape.num_opponent_joint(i));
      EXPECT_EQ(shape.JointIndex(i, shape.ActionOf(a, i), o), a);
      for (int m = 0; m < shape.num_actions(i); ++m) {
        const std::size_t d = shape.Deviate(a, i, m);
        EXPECT_EQ(shape.ActionOf(d, i), m);
        EXPECT_EQ(shape.OpponentIndex(d, i), o);
      }
    }
  }
  EXPECT_EQ(CodeOf([&] { shape.CheckPlayer(3); }), ErrorCode::kShape);
  EXPECT_EQ(CodeOf([&] { shape.CheckAction(0, 3); }), ErrorCode::kShape);
}

TEST(NormalizeDistributionTest, TolerancePolicy) {
  const std::vector<double> p =
      NormalizeDistribution({0.5, 0.5 + 1e-12, -1e-13}, "row");
  EXPECT_EQ(p[2], 0.0);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
  EXPECT_EQ(CodeOf([] { NormalizeDistribution({0.49, 0.49}, "x"); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] { NormalizeDistribution({1.1, -0.1}, "x"); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] { NormalizeDistribution({std::nan(""), 1.0}, "x"); }),
            ErrorCode::kInvalidInput);
  try {
    NormalizeDistribution({0.49, 0.49}, "stage [1][0]");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("stage [1][0]"), std::string::npos);
  }
}

TEST(JointMixedStrategyTest, MarginalsAndProducts) {
  const JointMixedStrategy corr = SigmaCorr();
  EXPECT_EQ(corr.Marginal(0), (std::vector<double>{0.5, 0.5}));
  EXPECT_FALSE(corr.IsProduct());
  const JointMixedStrategy prod =
      JointMixedStrategy::Product({{0.25, 0.75}, {0.5, 0.5}});
  EXPECT_TRUE(prod.IsProduct());
  EXPECT_DOUBLE_EQ(prod[prod.shape().Encode(std::vector<int>{1, 0})], 0.375);
  EXPECT_TRUE(JointMixedStrategy::Uniform(ActionShape({2, 3})).IsProduct());
  const JointMixedStrategy pm =
      JointMixedStrategy::PointMass(ActionShape({2, 2}), std::vector<int>{1, 0});
  EXPECT_EQ(pm[2], 1.0);
  EXPECT_EQ(SigmaEx().OpponentMarginal(1),
            (std::vector<double>{0.4, 0.4, 0.2}));
}

TEST(ConditionalTest, SigmaExRows) {
  const JointMixedStrategy sigma = SigmaEx();
  const PlayerConditionals p0 = ConditionalsOf(sigma, 0);
  EXPECT_EQ(p0.row(0)[0], 0.5);
  EXPECT_EQ(p0.row(2)[0], 1.0);
  EXPECT_EQ(p0.row(2)[1], 0.0);
  const Conditional c10 = ConditionalOf(sigma, 1, 0);
  EXPECT_NEAR(c10.mass, 0.6, 1e-15);
  for (double x : c10.dist) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
  const Conditional c11 = ConditionalOf(sigma, 1, 1);
  EXPECT_NEAR(c11.dist[0], 0.5, 1e-15);
  EXPECT_EQ(c11.dist[2], 0.0);
  EXPECT_EQ(Support(sigma, 1), (std::vector<int>{0, 1}));
}

TEST(ConditionalTest, UnsupportedActionHasZeroRow) {
  const JointMixedStrategy pm =
      JointMixedStrategy::PointMass(ActionShape({2, 2}), std::vector<int>{0, 0});
  const Conditional c = ConditionalOf(pm, 0, 1);
  EXPECT_EQ(c.mass, 0.0);
  EXPECT_EQ(c.dist, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(Support(pm, 0), (std::vector<int>{0}));
}

TEST(CosineGapTest, ReferenceValues) {
  const std::vector<double> e0{1.0, 0.0};
  const std::vector<double> e1{0.0, 1.0};
  const std::vector<double> half{0.5, 0.5};
  EXPECT_EQ(CosineGap(e0, e1), 1.0);
  EXPECT_EQ(CosineGap(e0, e0), 0.0);
  EXPECT_EQ(CosineGap(half, half), 0.0);
  EXPECT_NEAR(CosineGap(e0, half), 1.0 - 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(CosineGap(half, e0), 1.0 / std::sqrt(2.0) - 0.5, 1e-15);
  EXPECT_NEAR(CosineGap(half, std::vector<double>{0.0, 0.0}),
              1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(CodeOf([&] { CosineGap(std::vector<double>{0.0, 0.0}, e0); }),
            ErrorCode::kDomain);
}

TEST(CosineGapTest, InvariantUnderScalingOfSecondArgument) {
  const std::vector<double> a{0.2, 0.3, 0.5};
  const std::vector<double> b{0.6, 0.1, 0.3};
  std::vector<double> b3 = b;
  for (double& x : b3) x *= 3.0;
  EXPECT_NEAR(CosineGap(a, b), CosineGap(a, b3), 1e-15);
  EXPECT_GE(CosineGap(a, b), 0.0);
}

TEST(SameConditionalTest, LInfinityTolerance) {
  EXPECT_TRUE(SameConditional(std::vector<double>{0.5, 0.5},
                              std::vector<double>{0.5 + 5e-10, 0.5 - 5e-10}));
  EXPECT_FALSE(SameConditional(std::vector<double>{0.5, 0.5},
                               std::vector<double>{0.5 + 2e-9, 0.5 - 2e-9}));
}

TEST(MarkovGameTest, ValidatesTransitions) {
  const ActionShape shape({2});
  EXPECT_EQ(CodeOf([&] {
              MarkovGameSkeleton::Create(shape, 2, 1, {1, 0, 0.5, 0.4, 0, 1, 0, 1}, {1, 0});
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([&] {
              MarkovGameSkeleton::Create(shape, 2, 1, {1, 0, 0.5}, {1, 0});
            }),
            ErrorCode::kShape);
  const MarkovGameSkeleton g = MarkovGameSkeleton::Create(
      shape, 2, 1, {1, 1e-12, 0.5, 0.5, 0, 1, 0, 1},
      {0.5, 0.5});
  EXPECT_NEAR(g.NextStateDist(0, 0, 0)[0], 1.0, 1e-11);
  try {
    MarkovGameSkeleton::Create(shape, 2, 1, {1, 0, 0.5, 0.4, 0, 1, 0, 1}, {1, 0});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("transitions[0][0][1]"),
              std::string::npos);
  }
}

TEST(MarkovPolicyTest, ProductFlagIsChecked) {
  EXPECT_EQ(CodeOf([] {
              MarkovPolicy::Create(1, 1, {SigmaCorr()}, /*product=*/true);
            }),
            ErrorCode::kInvalidInput);
  const MarkovPolicy p = MarkovPolicy::Constant(3, 2, SigmaCorr());
  EXPECT_EQ(p.stages().size(), 6u);
  EXPECT_FALSE(p.product());
  const MarkovGameSkeleton g = MarkovGameSkeleton::NormalForm(ActionShape({2, 2}));
  EXPECT_EQ(CodeOf([&] { p.CheckCompatible(g); }), ErrorCode::kShape);
}

TEST(RewardFunctionTest, BoundIsEnforced) {
  RewardTensor r = RewardTensor::Zero(1, 1, 1, 2);
  r.data = {1.0, -1.0};
  EXPECT_EQ(RewardFunction::Create(r, 1.0).MaxAbs(), 1.0);
  r.data[1] = -1.0000001;
  EXPECT_EQ(CodeOf([&] { RewardFunction::Create(r, 1.0); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([&] { RewardFunction::Create(r, 0.0); }),
            ErrorCode::kInvalidInput);
}

TEST(EmbeddingTest, UtilityRoundTrip) {
  NormalFormGame u = NormalFormGame::Zero(ActionShape({2, 2}));
  u.utility = {1, 2, 3, 4, -1, -2, -3, -4};
  const RewardFunction r = EmbedUtility(u, 4.0);
  EXPECT_EQ(StageUtility(r.rewards, 0, 0, u.shape).utility, u.utility);
}

TEST(ConceptNamesTest, ParseRoundTrip) {
  for (Concept c : {Concept::kNash, Concept::kCorrelated,
                    Concept::kCoarseCorrelated}) {
    EXPECT_EQ(ParseConcept(ConceptName(c)), c);
  }
  for (DeviationClass d :
       {DeviationClass::kNeverTarget, DeviationClass::kNeverRecommended,
        DeviationClass::kUnrestricted}) {
    EXPECT_EQ(ParseDeviationClass(DeviationClassName(d)), d);
  }
  for (CostKind k : {CostKind::kOnline, CostKind::kOffline,
                     CostKind::kSocialWelfare, CostKind::kEgalitarian}) {
    EXPECT_EQ(ParseCostKind(CostKindName(k)), k);
  }
  EXPECT_EQ(CodeOf([] { ParseConcept("nashce"); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(PointMassAction(std::vector<double>{0.0, 1.0, 0.0}), 1);
  EXPECT_EQ(PointMassAction(std::vector<double>{0.5, 0.5}), -1);
}

}  // namespace
}  // namespace strictrd
