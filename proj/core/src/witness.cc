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

#include "strictrd/witness.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "strictrd/error.h"
#include "strictrd/installability.h"

namespace strictrd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string StageName(int h, int s) {
  return "(h=" + std::to_string(h) + ", s=" + std::to_string(s) + ")";
}

bool IsPure(const JointMixedStrategy& sigma) {
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    if (PointMassAction(sigma.Marginal(i)) < 0) return false;
  }
  return true;
}

// Players that have a deviation but play a single action.
bool HasSingleSupportDeviator(const JointMixedStrategy& sigma) {
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    if (sigma.shape().num_actions(i) >= 2 &&
        PointMassAction(sigma.Marginal(i)) >= 0) {
      return true;
    }
  }
  return false;
}

// Class and purity requirements shared by the normal-form and Markov
// epsilon constructions.
void CheckEpsilonPreconditions(const JointMixedStrategy& sigma,
                               const EpsilonConfig& config, Concept solution,
                               const std::string& where) {
  switch (solution) {
    case Concept::kNash:
      if (!IsPure(sigma)) {
        throw Error(ErrorCode::kNotInstallable,
                    "epsilon-strict Nash needs a pure target" + where);
      }
      if (config.deviation_class == DeviationClass::kUnrestricted) {
        throw Error(ErrorCode::kPrecondition,
                    "epsilon-strict Nash is impossible against deviations "
                    "that may put mass on the target action");
      }
      break;
    case Concept::kCorrelated:
      if (config.deviation_class != DeviationClass::kNeverRecommended) {
        throw Error(ErrorCode::kPrecondition,
                    "epsilon-strict correlated equilibria need the "
                    "never-recommended deviation class");
      }
      break;
    case Concept::kCoarseCorrelated:
      if (config.deviation_class == DeviationClass::kUnrestricted &&
          config.epsilon > 0.0 && HasSingleSupportDeviator(sigma)) {
        throw Error(ErrorCode::kPrecondition,
                    "unrestricted deviations need two distinguishable "
                    "supported actions per player" + where);
      }
      break;
  }
}

using StageUtilityFn = std::function<NormalFormGame(int h, int s)>;

RewardFunction BackwardInduction(const MarkovPolicy& policy,
                                 const MarkovGameSkeleton& game, double bound,
                                 double scale,
                                 const StageUtilityFn& stage_utility) {
  const int n = game.num_players();
  const int horizon = game.horizon();
  const int states = game.num_states();
  const std::size_t joint = game.num_joint();
  RewardTensor r = game.ZeroRewards();
  // next[i * states + s] holds V_{i,h+1}(s); zero past the horizon.
  std::vector<double> next(static_cast<std::size_t>(n) * states, 0.0);
  std::vector<double> current(next.size(), 0.0);
  for (int h = horizon - 1; h >= 0; --h) {
    for (int s = 0; s < states; ++s) {
      const NormalFormGame w = stage_utility(h, s);
      const JointMixedStrategy& pi = policy.stage(h, s);
      for (int i = 0; i < n; ++i) {
        double value = 0.0;
        for (std::size_t a = 0; a < joint; ++a) {
          const auto p_next = game.NextStateDist(h, s, a);
          double continuation = 0.0;
          for (int t = 0; t < states; ++t) {
            continuation += p_next[t] * next[static_cast<std::size_t>(i) * states + t];
          }
          const double q = scale * w.u(i, a);
          // Exact arithmetic keeps this inside the box; clamp rounding.
          r.at(i, h, s, a) = std::clamp(q - continuation, -bound, bound);
          value += pi[a] * q;
        }
        current[static_cast<std::size_t>(i) * states + s] = value;
      }
    }
    std::swap(next, current);
  }
  return RewardFunction::Create(std::move(r), bound);
}

void RequireStagesInstallable(const MarkovPolicy& policy,
                              const MarkovGameSkeleton& game,
                              Concept solution) {
  const MarkovInstallabilityReport report =
      CheckMarkov(policy, game, solution);
  if (!report.installable) {
    const auto [h, s] = report.FailingStages().front();
    throw Error(ErrorCode::kNotInstallable,
                "stage " + StageName(h, s) + " is not " +
                    std::string(ConceptName(solution)) + "-installable");
  }
}

}  // namespace

void EpsilonConfig::Validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must be >= 0");
  }
  if (!std::isfinite(bound) || !(bound > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "bound must be > 0");
  }
}

NormalFormGame WitnessUtility(const JointMixedStrategy& sigma) {
  const ActionShape& shape = sigma.shape();
  NormalFormGame game = NormalFormGame::Zero(shape);
  for (int i = 0; i < shape.num_players(); ++i) {
    const PlayerConditionals conds = ConditionalsOf(sigma, i);
    std::vector<double> norm(conds.num_actions(), 0.0);
    for (int j = 0; j < conds.num_actions(); ++j) norm[j] = L2Norm(conds.row(j));
    for (std::size_t a = 0; a < shape.num_joint(); ++a) {
      const int j = shape.ActionOf(a, i);
      if (norm[j] == 0.0) continue;
      game.u(i, a) = conds.row(j)[shape.OpponentIndex(a, i)] / norm[j];
    }
  }
  return game;
}

GapConstant GammaCorrelated(const JointMixedStrategy& sigma) {
  if (!CheckCorrelated(sigma).installable) return {0.0, false};
  double gamma = kInf;
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    const PlayerConditionals conds = ConditionalsOf(sigma, i);
    for (int j = 0; j < conds.num_actions(); ++j) {
      if (!conds.supported(j)) continue;
      for (int k = 0; k < conds.num_actions(); ++k) {
        if (k == j) continue;
        gamma = std::min(gamma, CosineGap(conds.row(j), conds.row(k)));
      }
    }
  }
  return {gamma, true};
}

namespace {

double CoarseGammaImpl(const JointMixedStrategy& sigma, bool weighted) {
  double gamma = kInf;
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    const PlayerConditionals conds = ConditionalsOf(sigma, i);
    const int identical = PointMassAction(conds.mass);
    for (int m = 0; m < conds.num_actions(); ++m) {
      if (m == identical) continue;
      double gap = 0.0;
      for (int l = 0; l < conds.num_actions(); ++l) {
        if (!conds.supported(l)) continue;
        const double term = CosineGap(conds.row(l), conds.row(m));
        gap += weighted ? conds.mass[l] * term : term;
      }
      gamma = std::min(gamma, gap);
    }
  }
  return gamma;
}

}  // namespace

GapConstant GammaCoarseCorrelated(const JointMixedStrategy& sigma) {
  if (!CheckCoarseCorrelated(sigma).installable) return {0.0, false};
  return {CoarseGammaImpl(sigma, /*weighted=*/true), true};
}

double GammaCoarseCorrelatedUnweighted(const JointMixedStrategy& sigma) {
  if (!CheckCoarseCorrelated(sigma).installable) return 0.0;
  return CoarseGammaImpl(sigma, /*weighted=*/false);
}

double MaxInstallableGap(const JointMixedStrategy& sigma, Concept solution,
                         double bound) {
  switch (solution) {
    case Concept::kNash:
      return IsPure(sigma) ? 2.0 * bound : 0.0;
    case Concept::kCorrelated:
      return bound * GammaCorrelated(sigma).value;
    case Concept::kCoarseCorrelated:
      return bound * GammaCoarseCorrelated(sigma).value;
  }
  return 0.0;
}

NormalFormGame EpsilonWitness(const JointMixedStrategy& sigma,
                              const EpsilonConfig& config, Concept solution) {
  config.Validate();
  CheckEpsilonPreconditions(sigma, config, solution, "");
  const double bound = config.bound;
  const double epsilon = config.epsilon;
  if (solution == Concept::kNash) {
    if (epsilon >= 2.0 * bound) {
      throw InfeasibleEpsilonError(
          "epsilon must be below 2B for a Nash witness", 2.0 * bound);
    }
    const ActionShape& shape = sigma.shape();
    std::size_t target = 0;
    for (std::size_t a = 0; a < shape.num_joint(); ++a) {
      if (sigma[a] > 0.0) target = a;
    }
    NormalFormGame game = NormalFormGame::Zero(shape);
    for (int i = 0; i < shape.num_players(); ++i) {
      for (std::size_t a = 0; a < shape.num_joint(); ++a) {
        game.u(i, a) = a == target ? bound : -bound;
      }
    }
    return game;
  }

  const GapConstant gamma = solution == Concept::kCorrelated
                                ? GammaCorrelated(sigma)
                                : GammaCoarseCorrelated(sigma);
  if (!gamma.installable) {
    throw Error(ErrorCode::kNotInstallable,
                "target is not " + std::string(ConceptName(solution)) +
                    "-installable");
  }
  const double max_gap = bound * gamma.value;
  if (epsilon > max_gap) {
    throw InfeasibleEpsilonError(
        "epsilon " + std::to_string(epsilon) + " exceeds B * gamma = " +
            std::to_string(max_gap),
        max_gap);
  }
  const double alpha =
      epsilon > 0.0 && std::isfinite(gamma.value) ? epsilon / gamma.value : bound;
  NormalFormGame game = WitnessUtility(sigma);
  for (double& x : game.utility) x = std::min(alpha * x, bound);
  return game;
}

RewardFunction MarkovWitness(const MarkovPolicy& policy,
                             const MarkovGameSkeleton& game, double bound,
                             Concept solution, ConditionalScaling scaling) {
  if (!std::isfinite(bound) || !(bound > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "bound must be > 0");
  }
  RequireStagesInstallable(policy, game, solution);
  const StageUtilityFn stage_utility = [&](int h, int s) {
    const JointMixedStrategy& pi = policy.stage(h, s);
    if (scaling == ConditionalScaling::kUnitNorm) return WitnessUtility(pi);
    const ActionShape& shape = pi.shape();
    NormalFormGame w = NormalFormGame::Zero(shape);
    for (int i = 0; i < shape.num_players(); ++i) {
      const PlayerConditionals conds = ConditionalsOf(pi, i);
      for (std::size_t a = 0; a < shape.num_joint(); ++a) {
        w.u(i, a) = conds.row(shape.ActionOf(a, i))[shape.OpponentIndex(a, i)];
      }
    }
    return w;
  };
  return BackwardInduction(policy, game, bound, bound / 2.0, stage_utility);
}

RewardFunction MarkovEpsilonWitness(const MarkovPolicy& policy,
                                    const MarkovGameSkeleton& game,
                                    const EpsilonConfig& config,
                                    Concept solution) {
  config.Validate();
  RequireStagesInstallable(policy, game, solution);
  const double bound = config.bound;
  const int horizon = game.horizon();
  double stage_bound = kInf;
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < game.num_states(); ++s) {
      const JointMixedStrategy& pi = policy.stage(h, s);
      CheckEpsilonPreconditions(pi, config, solution, " at " + StageName(h, s));
      stage_bound = std::min(stage_bound, MaxInstallableGap(pi, solution, bound));
    }
  }
  const double max_gap = stage_bound / horizon;
  const bool out_of_reach = solution == Concept::kNash
                                ? config.epsilon >= max_gap
                                : config.epsilon > max_gap;
  if (out_of_reach) {
    throw InfeasibleEpsilonError(
        "epsilon " + std::to_string(config.epsilon) +
            " exceeds the per-stage bound divided by H = " +
            std::to_string(max_gap),
        max_gap);
  }
  const double scale = horizon == 1 ? bound : bound / 2.0;
  const StageUtilityFn stage_utility = [&](int h, int s) {
    const JointMixedStrategy& pi = policy.stage(h, s);
    if (solution != Concept::kNash) return WitnessUtility(pi);
    NormalFormGame w = NormalFormGame::Zero(pi.shape());
    for (int i = 0; i < pi.shape().num_players(); ++i) {
      for (std::size_t a = 0; a < pi.shape().num_joint(); ++a) {
        w.u(i, a) = pi[a] > 0.0 ? 1.0 : -1.0;
      }
    }
    return w;
  };
  return BackwardInduction(policy, game, bound, scale, stage_utility);
}

}  // namespace strictrd
