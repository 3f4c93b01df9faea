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

#include "strictrd/verifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "strictrd/error.h"

namespace strictrd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckShapes(const MarkovGameSkeleton& game, const RewardTensor& rewards,
                 const MarkovPolicy& policy) {
  policy.CheckCompatible(game);
  if (rewards.players != game.num_players() ||
      rewards.horizon != game.horizon() ||
      rewards.states != game.num_states() ||
      rewards.joint != game.num_joint() ||
      rewards.data.size() != static_cast<std::size_t>(rewards.players) *
                                 rewards.horizon * rewards.states *
                                 rewards.joint) {
    throw Error(ErrorCode::kShape, "reward tensor is not shaped for this game");
  }
}

double Expect(std::span<const double> dist, const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t s = 0; s < dist.size(); ++s) total += dist[s] * v[s];
  return total;
}

// E_{a_{-i} ~ q}[r_i(m, a_{-i}) + sum_s' P(s'|s, (m, a_{-i})) next(s')] for
// every m.
std::vector<double> DeviationStageValues(const MarkovGameSkeleton& game,
                                         const RewardTensor& rewards, int i,
                                         int h, int s,
                                         const std::vector<double>& opponent,
                                         const std::vector<double>& next) {
  const ActionShape& shape = game.shape();
  std::vector<double> out(shape.num_actions(i), 0.0);
  for (int m = 0; m < shape.num_actions(i); ++m) {
    double total = 0.0;
    for (std::size_t o = 0; o < opponent.size(); ++o) {
      if (opponent[o] == 0.0) continue;
      const std::size_t a = shape.JointIndex(i, m, o);
      total += opponent[o] *
               (rewards.at(i, h, s, a) + Expect(game.NextStateDist(h, s, a), next));
    }
    out[m] = total;
  }
  return out;
}

void RequireProductStages(const MarkovPolicy& policy) {
  if (policy.product()) return;
  for (const JointMixedStrategy& stage : policy.stages()) {
    if (!stage.IsProduct()) {
      throw Error(ErrorCode::kPrecondition,
                  "Nash verification needs a product policy");
    }
  }
}

void Finish(GapReport& report) {
  report.min_gap = kInf;
  for (const GapEntry& e : report.entries) {
    if (e.gap < report.min_gap) {
      report.min_gap = e.gap;
      report.argmin = e;
    }
  }
  report.strict = report.min_gap > 0.0;
  if (report.epsilon > 0.0) {
    report.strict = report.strict &&
                    report.min_gap >= report.epsilon - kEpsilonTolerance &&
                    !report.near_identity_deviations;
  }
}

}  // namespace

ValueTables PolicyEvaluation(const MarkovGameSkeleton& game,
                             const RewardTensor& rewards,
                             const MarkovPolicy& policy) {
  CheckShapes(game, rewards, policy);
  const int n = game.num_players();
  const int horizon = game.horizon();
  const int num_states = game.num_states();
  const std::size_t joint = game.num_joint();
  ValueTables t = ValueTables::Zero(n, horizon, num_states, joint);
  std::vector<double> next(num_states);
  for (int i = 0; i < n; ++i) {
    for (int h = horizon - 1; h >= 0; --h) {
      for (int s = 0; s < num_states; ++s) next[s] = t.V(i, h + 1, s);
      for (int s = 0; s < num_states; ++s) {
        const JointMixedStrategy& pi = policy.stage(h, s);
        double v = 0.0;
        for (std::size_t a = 0; a < joint; ++a) {
          const double q =
              rewards.at(i, h, s, a) + Expect(game.NextStateDist(h, s, a), next);
          t.Q(i, h, s, a) = q;
          v += pi[a] * q;
        }
        t.V(i, h, s) = v;
      }
    }
  }
  return t;
}

Visitation ComputeVisitation(const MarkovGameSkeleton& game,
                             const MarkovPolicy& policy) {
  policy.CheckCompatible(game);
  const int horizon = game.horizon();
  const int num_states = game.num_states();
  const std::size_t joint = game.num_joint();
  Visitation mu{horizon, num_states, joint,
                std::vector<double>(static_cast<std::size_t>(horizon) *
                                        num_states * joint,
                                    0.0)};
  std::vector<double> state_dist(game.initial_dist().begin(),
                                 game.initial_dist().end());
  for (int h = 0; h < horizon; ++h) {
    std::vector<double> next(num_states, 0.0);
    for (int s = 0; s < num_states; ++s) {
      if (state_dist[s] == 0.0) continue;
      const JointMixedStrategy& pi = policy.stage(h, s);
      for (std::size_t a = 0; a < joint; ++a) {
        const double m = state_dist[s] * pi[a];
        mu.at(h, s, a) = m;
        if (m == 0.0) continue;
        const std::span<const double> p = game.NextStateDist(h, s, a);
        for (int s2 = 0; s2 < num_states; ++s2) next[s2] += m * p[s2];
      }
    }
    state_dist = std::move(next);
  }
  return mu;
}

std::vector<int> AllowedActions(const JointMixedStrategy& stage, int player,
                                DeviationClass deviation_class) {
  const std::vector<double> mass = stage.Marginal(player);
  const int target = PointMassAction(mass);
  std::vector<int> allowed;
  for (int m = 0; m < static_cast<int>(mass.size()); ++m) {
    switch (deviation_class) {
      case DeviationClass::kUnrestricted:
        allowed.push_back(m);
        break;
      case DeviationClass::kNeverTarget:
        if (m != target) allowed.push_back(m);
        break;
      case DeviationClass::kNeverRecommended:
        if (mass[m] <= 0.0) allowed.push_back(m);
        break;
    }
  }
  return allowed;
}

DeviationValues BestResponse(const MarkovGameSkeleton& game,
                             const RewardTensor& rewards,
                             const MarkovPolicy& policy, int player,
                             DeviationClass deviation_class) {
  CheckShapes(game, rewards, policy);
  game.shape().CheckPlayer(player);
  const int horizon = game.horizon();
  const int num_states = game.num_states();
  DeviationValues out{player, horizon, num_states,
                      std::vector<double>(
                          static_cast<std::size_t>(horizon + 1) * num_states,
                          0.0),
                      std::vector<int>(
                          static_cast<std::size_t>(horizon) * num_states, -1)};
  std::vector<double> next(num_states, 0.0);
  for (int h = horizon - 1; h >= 0; --h) {
    for (int s = 0; s < num_states; ++s) next[s] = out.at(h + 1, s);
    for (int s = 0; s < num_states; ++s) {
      const JointMixedStrategy& pi = policy.stage(h, s);
      const std::vector<int> allowed =
          AllowedActions(pi, player, deviation_class);
      if (allowed.empty()) {
        throw Error(ErrorCode::kPrecondition,
                    "deviation class " +
                        std::string(DeviationClassName(deviation_class)) +
                        " leaves player " + std::to_string(player) +
                        " no action at (h=" + std::to_string(h) +
                        ", s=" + std::to_string(s) + ")");
      }
      const std::vector<double> values = DeviationStageValues(
          game, rewards, player, h, s, pi.OpponentMarginal(player), next);
      int best = allowed.front();
      for (int m : allowed) {
        if (values[m] > values[best]) best = m;
      }
      const std::size_t idx = static_cast<std::size_t>(h) * num_states + s;
      out.value[idx] = values[best];
      out.action[idx] = best;
    }
  }
  return out;
}

GapReport CheckStrict(const MarkovGameSkeleton& game,
                      const RewardTensor& rewards, const MarkovPolicy& policy,
                      Concept solution, DeviationClass deviation_class,
                      double epsilon) {
  CheckShapes(game, rewards, policy);
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must be finite and >= 0");
  }
  if (solution == Concept::kNash) RequireProductStages(policy);

  GapReport report;
  report.solution = solution;
  report.deviation_class = deviation_class;
  report.epsilon = epsilon;
  const ValueTables values = PolicyEvaluation(game, rewards, policy);
  const ActionShape& shape = game.shape();
  const int horizon = game.horizon();
  const int num_states = game.num_states();

  for (int i = 0; i < shape.num_players(); ++i) {
    if (shape.num_actions(i) < 2) continue;
    if (solution == Concept::kCorrelated) {
      for (int h = 0; h < horizon; ++h) {
        for (int s = 0; s < num_states; ++s) {
          const PlayerConditionals cond =
              ConditionalsOf(policy.stage(h, s), i);
          for (int j = 0; j < cond.num_actions(); ++j) {
            if (!cond.supported(j)) continue;
            const std::span<const double> row = cond.row(j);
            for (int k = 0; k < cond.num_actions(); ++k) {
              if (k == j) continue;
              double gap = 0.0;
              for (std::size_t o = 0; o < row.size(); ++o) {
                if (row[o] == 0.0) continue;
                gap += row[o] * (values.Q(i, h, s, shape.JointIndex(i, j, o)) -
                                 values.Q(i, h, s, shape.JointIndex(i, k, o)));
              }
              report.entries.push_back({i, h, s, j, k, gap});
            }
          }
        }
      }
      if (deviation_class == DeviationClass::kUnrestricted &&
          !report.entries.empty()) {
        report.near_identity_deviations = true;
      }
      continue;
    }

    const DeviationValues best =
        BestResponse(game, rewards, policy, i, deviation_class);
    std::vector<double> next(num_states);
    for (int h = 0; h < horizon; ++h) {
      for (int s = 0; s < num_states; ++s) next[s] = best.at(h + 1, s);
      for (int s = 0; s < num_states; ++s) {
        const JointMixedStrategy& pi = policy.stage(h, s);
        const int target = PointMassAction(pi.Marginal(i));
        if (target >= 0 && deviation_class == DeviationClass::kUnrestricted) {
          report.near_identity_deviations = true;
        }
        const std::vector<double> dev = DeviationStageValues(
            game, rewards, i, h, s, pi.OpponentMarginal(i), next);
        for (int m : AllowedActions(pi, i, deviation_class)) {
          if (m == target) continue;
          report.entries.push_back({i, h, s, -1, m, values.V(i, h, s) - dev[m]});
        }
      }
    }
  }
  Finish(report);
  return report;
}

GapReport NormalFormOracle(const NormalFormGame& game,
                           const JointMixedStrategy& sigma, Concept solution) {
  if (!(game.shape == sigma.shape()) ||
      game.utility.size() !=
          static_cast<std::size_t>(game.shape.num_players()) *
              game.shape.num_joint()) {
    throw Error(ErrorCode::kShape, "utility does not match the strategy");
  }
  if (solution == Concept::kNash && !sigma.IsProduct()) {
    throw Error(ErrorCode::kPrecondition,
                "Nash verification needs a product strategy");
  }
  GapReport report;
  report.solution = solution;
  const ActionShape& shape = game.shape;
  for (int i = 0; i < shape.num_players(); ++i) {
    const int num_actions = shape.num_actions(i);
    if (num_actions < 2) continue;
    if (solution == Concept::kCorrelated) {
      const std::vector<double> mass = sigma.Marginal(i);
      for (int j = 0; j < num_actions; ++j) {
        if (!(mass[j] > 0.0)) continue;
        for (int k = 0; k < num_actions; ++k) {
          if (k == j) continue;
          double gap = 0.0;
          for (std::size_t o = 0; o < shape.num_opponent_joint(i); ++o) {
            const std::size_t aj = shape.JointIndex(i, j, o);
            if (sigma[aj] == 0.0) continue;
            gap += sigma[aj] / mass[j] *
                   (game.u(i, aj) - game.u(i, shape.JointIndex(i, k, o)));
          }
          report.entries.push_back({i, 0, 0, j, k, gap});
        }
      }
      continue;
    }
    double on_path = 0.0;
    for (std::size_t a = 0; a < shape.num_joint(); ++a) {
      on_path += sigma[a] * game.u(i, a);
    }
    const int target = PointMassAction(sigma.Marginal(i));
    for (int m = 0; m < num_actions; ++m) {
      if (m == target) continue;
      double deviation = 0.0;
      for (std::size_t a = 0; a < shape.num_joint(); ++a) {
        if (sigma[a] == 0.0) continue;
        deviation += sigma[a] * game.u(i, shape.Deviate(a, i, m));
      }
      report.entries.push_back({i, 0, 0, -1, m, on_path - deviation});
    }
  }
  Finish(report);
  return report;
}

std::vector<double> InitialValues(const MarkovGameSkeleton& game,
                                  const ValueTables& values) {
  std::vector<double> out(game.num_players(), 0.0);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int s = 0; s < game.num_states(); ++s) {
      out[i] += game.initial_dist()[s] * values.V(i, 0, s);
    }
  }
  return out;
}

double EvaluateCost(const MarkovGameSkeleton& game, const MarkovPolicy& policy,
                    const RewardTensor& rewards, const CostSpec& cost) {
  CheckShapes(game, rewards, policy);
  switch (cost.kind) {
    case CostKind::kOffline:
    case CostKind::kOnline: {
      const RewardTensor& base = ResolveBaseline(cost, game);
      const bool weighted = cost.kind == CostKind::kOnline;
      Visitation mu;
      if (weighted) mu = ComputeVisitation(game, policy);
      double total = 0.0;
      for (int i = 0; i < game.num_players(); ++i) {
        for (int h = 0; h < game.horizon(); ++h) {
          for (int s = 0; s < game.num_states(); ++s) {
            for (std::size_t a = 0; a < game.num_joint(); ++a) {
              const double d =
                  std::abs(rewards.at(i, h, s, a) - base.at(i, h, s, a));
              total += weighted ? mu.at(h, s, a) * d : d;
            }
          }
        }
      }
      return total;
    }
    case CostKind::kSocialWelfare:
    case CostKind::kEgalitarian: {
      const std::vector<double> v =
          InitialValues(game, PolicyEvaluation(game, rewards, policy));
      if (cost.kind == CostKind::kSocialWelfare) {
        double total = 0.0;
        for (double x : v) total += x;
        return -total;
      }
      return -*std::min_element(v.begin(), v.end());
    }
  }
  throw Error(ErrorCode::kInternal, "unknown cost kind");
}

}  // namespace strictrd
