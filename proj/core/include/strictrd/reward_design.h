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

// Optimal reward design as linear programs. Strictness is replaced by a
// uniform slack iota, rewards are boxed in [-B, B] and the objective is one
// of four costs of the designed reward.
//
// Stage gap rows, written over per-player payoff variables x_i(a) (u in the
// normal-form program, Q_h(s, .) in the Markov program):
//  * coarse-correlated and Nash, every player i and stage action m other
//    than a point-mass target:
//      sum_a sigma(a) (x_i(a) - x_i(m, a_{-i})) >= iota;
//  * correlated, every player i, supported j and k != j:
//      sum_{a_{-i}} sigma_ij(a_{-i}) (x_i(j, a_{-i}) - x_i(k, a_{-i})) >= iota,
//    sigma_ij being the conditional (joint mass divided by p_ij).
// Nash targets must factorize; for them the first form equals the
// unilateral-deviation inequality against the opponents' product.

#ifndef STRICTRD_REWARD_DESIGN_H_
#define STRICTRD_REWARD_DESIGN_H_

#include <cstddef>
#include <functional>
#include <string>

#include "strictrd/concepts.h"
#include "strictrd/game.h"
#include "strictrd/lp.h"

namespace strictrd {

struct DesignConfig {
  double slack = 0.1;  // iota
  double bound = 1.0;  // B
  Concept solution = Concept::kCoarseCorrelated;
  // Maximize iota under the bound instead of minimizing the cost; `slack`
  // is then ignored.
  bool maximize_slack = false;
  SimplexOptions simplex;

  void Validate() const;
};

// Variable offsets of the normal-form program. u_i(a) is var u + i |A| + a.
struct NfgLayout {
  int u = 0;
  int slack = -1;  // the iota variable in max-slack mode
};

struct NfgProgram {
  LinearProgram lp;
  NfgLayout layout;
};

// Variable offsets of the Markov program. Blocks are laid out
// [player][stage][state][joint action] (V: [player][stage][state] over H + 1
// stages, the last fixed at 0).
struct MgLayout {
  int players = 0;
  int horizon = 0;
  int states = 0;
  std::size_t joint = 0;
  int r = 0;
  int q = 0;
  int v = 0;
  int slack = -1;

  int R(int i, int h, int s, std::size_t a) const {
    return r + static_cast<int>(
                   ((static_cast<std::size_t>(i) * horizon + h) * states + s) *
                       joint +
                   a);
  }
  int Q(int i, int h, int s, std::size_t a) const {
    return q + static_cast<int>(
                   ((static_cast<std::size_t>(i) * horizon + h) * states + s) *
                       joint +
                   a);
  }
  int V(int i, int h, int s) const {
    return v + (i * (horizon + 1) + h) * states + s;
  }
};

struct MgProgram {
  LinearProgram lp;
  MgLayout layout;
};

// cost.baseline, when needed, is an H = 1, |S| = 1 reward tensor.
NfgProgram BuildNfgLp(const JointMixedStrategy& sigma, const CostSpec& cost,
                      const DesignConfig& config);
MgProgram BuildMgLp(const MarkovGameSkeleton& game, const MarkovPolicy& policy,
                    const CostSpec& cost, const DesignConfig& config);

// Appends the gap rows of one stage. Row terms are var_of(i, a), and
// offset(i, a) is a known constant added to each payoff (e.g. fixed
// continuation values). slack_var >= 0 replaces the constant iota by that
// variable. Returns the number of rows added.
using PayoffVar = std::function<int(int player, std::size_t joint)>;
using PayoffOffset = std::function<double(int player, std::size_t joint)>;
int AppendGapRows(LinearProgram& lp, const JointMixedStrategy& stage,
                  Concept solution, double slack, int slack_var,
                  const PayoffVar& var_of, const PayoffOffset& offset,
                  const std::string& prefix);

struct DesignResult {
  LpStatus status = LpStatus::kInfeasible;
  // Set when status is kOptimal.
  RewardFunction reward;
  double objective = 0.0;  // cost C(r), or iota in max-slack mode
  double slack = 0.0;      // iota used (or maximized)
  int iterations = 0;

  bool feasible() const { return status == LpStatus::kOptimal; }
};

// Precondition checks mirror the builders. Unbounded programs raise
// kInternal; infeasibility is reported through `status`.
DesignResult DesignNfg(const JointMixedStrategy& sigma, const CostSpec& cost,
                       const DesignConfig& config);
DesignResult DesignMg(const MarkovGameSkeleton& game,
                      const MarkovPolicy& policy, const CostSpec& cost,
                      const DesignConfig& config);

// Baseline that fixes rewards one stage at a time, from the last stage back,
// each stage solving its own small program with the later values frozen.
// It can fail where the joint program succeeds: early stages may need
// continuation values that a locally optimal later stage did not leave.
DesignResult GreedyBackwardDesign(const MarkovGameSkeleton& game,
                                  const MarkovPolicy& policy,
                                  const CostSpec& cost,
                                  const DesignConfig& config);

}  // namespace strictrd

#endif  // STRICTRD_REWARD_DESIGN_H_
