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

// Explicit reward constructions that certify installability.
//
// The normal-form witness sets u_i(j, a_{-i}) = sigma_ij(a_{-i}) / ||sigma_ij||
// (zero rows for unsupported j). Against a deviation from j to k it keeps
// an expected margin of ||sigma_ij|| (1 - cos theta_ijk), which is what the
// gamma constants below measure. The Markov witness places a scaled copy of
// the stage witness in every Q-table by backward induction.

#ifndef STRICTRD_WITNESS_H_
#define STRICTRD_WITNESS_H_

#include "strictrd/concepts.h"
#include "strictrd/game.h"

namespace strictrd {

struct EpsilonConfig {
  double epsilon = 0.0;
  double bound = 1.0;
  DeviationClass deviation_class = DeviationClass::kUnrestricted;

  void Validate() const;
};

NormalFormGame WitnessUtility(const JointMixedStrategy& sigma);

// A gap constant and whether sigma passed the matching installability test.
// `value` is 0 when it did not, and +infinity when no deviation exists at
// all (every player has a single action).
struct GapConstant {
  double value = 0.0;
  bool installable = false;
};

// min over players i, supported j and k != j of CosineGap(sigma_ij, sigma_ik).
GapConstant GammaCorrelated(const JointMixedStrategy& sigma);
// min over players i and deviations m of
//   sum_l p_il ||sigma_il|| (1 - cos theta_ilm),
// skipping m when it is the only action i plays. Equals the exact minimum
// coarse-correlated deviation gap of WitnessUtility(sigma).
GapConstant GammaCoarseCorrelated(const JointMixedStrategy& sigma);
// Same minimum without the p_il weights (diagnostic only).
double GammaCoarseCorrelatedUnweighted(const JointMixedStrategy& sigma);

// Largest gap an epsilon-strict normal-form witness can reach under `bound`:
// 2B for Nash, B * gamma otherwise.
double MaxInstallableGap(const JointMixedStrategy& sigma, Concept solution,
                         double bound);

// Utility making sigma an epsilon-strict equilibrium with entries in
// [-B, B]:
//  * kNash: sigma pure, class must exclude the target, epsilon < 2B;
//    u = B at a*, -B elsewhere.
//  * kCorrelated: class kNeverRecommended, epsilon <= B gamma_CE;
//    u = (epsilon / gamma_CE) * WitnessUtility(sigma).
//  * kCoarseCorrelated: epsilon <= B gamma_CCE (the unrestricted class also
//    needs two distinguishable supported actions for every player);
//    u = (epsilon / gamma_CCE) * WitnessUtility(sigma).
// epsilon == 0 scales the witness to the bound. Throws InfeasibleEpsilonError
// carrying the maximum gap when epsilon is out of reach.
NormalFormGame EpsilonWitness(const JointMixedStrategy& sigma,
                              const EpsilonConfig& config, Concept solution);

enum class ConditionalScaling {
  kUnitNorm,        // sigma_ij / ||sigma_ij||_2, the stage witness utility
  kRawConditional,  // sigma_ij itself
};

// r_h(s,a) = (B/2) w_h^s(a) - sum_s' P_h(s'|s,a) V_{h+1}(s'), from h = H down
// to 1, where w_h^s is the stage witness of pi_h(s). Every Q-table equals
// (B/2) w, |r| <= B and 0 <= V <= B/2. Throws kNotInstallable naming the
// first failing stage.
//
// kRawConditional reproduces the construction with unnormalized
// conditionals; it keeps the bounds but can leave zero stage gaps (e.g. a
// recommended conditional (1/2, 1/2) against a deviation conditional (1, 0)).
RewardFunction MarkovWitness(
    const MarkovPolicy& policy, const MarkovGameSkeleton& game, double bound,
    Concept solution,
    ConditionalScaling scaling = ConditionalScaling::kUnitNorm);

// Epsilon-strict Markov construction. Requires epsilon <= LB / H, LB being
// the smallest per-stage normal-form bound (2B for Nash with strict
// inequality, B gamma otherwise). Stage utilities are scaled by B when H = 1
// and by B/2 otherwise; Nash stages use +1 at a*, -1 elsewhere.
RewardFunction MarkovEpsilonWitness(const MarkovPolicy& policy,
                                    const MarkovGameSkeleton& game,
                                    const EpsilonConfig& config,
                                    Concept solution);

}  // namespace strictrd

#endif  // STRICTRD_WITNESS_H_
