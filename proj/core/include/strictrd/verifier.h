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

// LP-free ground truth for Markov games with rewards: policy evaluation,
// visitation measures, class-restricted best responses and strictness-gap
// measurement. Normal-form games are the H = 1, |S| = 1 case.

#ifndef STRICTRD_VERIFIER_H_
#define STRICTRD_VERIFIER_H_

#include <cstddef>
#include <vector>

#include "strictrd/concepts.h"
#include "strictrd/game.h"

namespace strictrd {

// V and Q of every player under pi.
ValueTables PolicyEvaluation(const MarkovGameSkeleton& game,
                             const RewardTensor& rewards,
                             const MarkovPolicy& policy);

// mu_h(s, a): probability that play under pi is at (s, a) in stage h,
// starting from the game's initial distribution.
struct Visitation {
  int horizon = 0;
  int states = 0;
  std::size_t joint = 0;
  std::vector<double> mu;

  double at(int h, int s, std::size_t a) const {
    return mu[(static_cast<std::size_t>(h) * states + s) * joint + a];
  }
  double& at(int h, int s, std::size_t a) {
    return mu[(static_cast<std::size_t>(h) * states + s) * joint + a];
  }
};

Visitation ComputeVisitation(const MarkovGameSkeleton& game,
                             const MarkovPolicy& policy);

// Actions player i may take at (h, s) under a deviation class:
//  * kUnrestricted: every action;
//  * kNeverTarget: every action but a*_i when the stage marginal of i is a
//    point mass at a*_i, every action otherwise;
//  * kNeverRecommended: actions with zero stage marginal.
std::vector<int> AllowedActions(const JointMixedStrategy& stage, int player,
                                DeviationClass deviation_class);

// Value of player i's best deviation policy when the opponents keep playing
// the a_{-i} marginals of pi and the deviator sees no recommendations.
// value[h * S + s] for h in [0, H]; the last layer is 0.
struct DeviationValues {
  int player = 0;
  int horizon = 0;
  int states = 0;
  std::vector<double> value;
  std::vector<int> action;  // a maximizing pure action per (h, s), h < H

  double at(int h, int s) const {
    return value[static_cast<std::size_t>(h) * states + s];
  }
};

// Throws kPrecondition when the class leaves no action at some (h, s).
DeviationValues BestResponse(const MarkovGameSkeleton& game,
                             const RewardTensor& rewards,
                             const MarkovPolicy& policy, int player,
                             DeviationClass deviation_class);

// One measured dominance margin. For kCorrelated, `recommended` is j and
// `deviation` is k; for kNash and kCoarseCorrelated `recommended` is -1 and
// `deviation` is the action played at (h, s) before the best continuation.
struct GapEntry {
  int player = 0;
  int stage = 0;
  int state = 0;
  int recommended = -1;
  int deviation = 0;
  double gap = 0.0;
};

struct GapReport {
  Concept solution = Concept::kCoarseCorrelated;
  DeviationClass deviation_class = DeviationClass::kUnrestricted;
  double epsilon = 0.0;
  // +infinity when no deviation exists anywhere.
  double min_gap = 0.0;
  GapEntry argmin;
  std::vector<GapEntry> entries;
  // Set when the class admits deviations that mix the on-path play with an
  // arbitrarily small change. The infimum of their gaps is 0, so a positive
  // epsilon can never be met.
  bool near_identity_deviations = false;
  bool strict = false;
};

// Minimum gap required for a strict verdict.
inline constexpr double kEpsilonTolerance = 1e-9;

// Measures every stage strictness margin of pi in the game with `rewards`.
//  * kNash / kCoarseCorrelated: for each (i, h, s) and allowed stage action
//    m, V_{i,h}(s) - E[r_i(m, a_{-i}) + P BR_{i,h+1}], the deviator
//    continuing with its class-restricted best response. A deviation
//    identical to the target (m the only action i plays) is skipped.
//  * kCorrelated: for each (i, h, s), supported j and k != j,
//    sum_{a_{-i}} sigma_ij(a_{-i}) (Q(j, a_{-i}) - Q(k, a_{-i})) with the
//    conditional of pi_h(s).
// strict: min_gap > 0 and, when epsilon > 0, min_gap >= epsilon - 1e-9 with
// no near-identity deviations.
GapReport CheckStrict(const MarkovGameSkeleton& game,
                      const RewardTensor& rewards, const MarkovPolicy& policy,
                      Concept solution,
                      DeviationClass deviation_class =
                          DeviationClass::kUnrestricted,
                      double epsilon = 0.0);

// Direct summation of the normal-form strictness inequalities for the
// unrestricted class; no value iteration. Matches CheckStrict on the H = 1
// embedding entry by entry.
GapReport NormalFormOracle(const NormalFormGame& game,
                           const JointMixedStrategy& sigma, Concept solution);

// C^pi(r) computed from values and visitation, independent of any LP.
double EvaluateCost(const MarkovGameSkeleton& game, const MarkovPolicy& policy,
                    const RewardTensor& rewards, const CostSpec& cost);

// sum_s initial(s) V_{i,0}(s) for every player.
std::vector<double> InitialValues(const MarkovGameSkeleton& game,
                                  const ValueTables& values);

}  // namespace strictrd

#endif  // STRICTRD_VERIFIER_H_
