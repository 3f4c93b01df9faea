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

#include "strictrd/reward_design.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "strictrd/error.h"
#include "strictrd/verifier.h"

namespace strictrd {
namespace {

std::string Tag(int i, std::size_t a) {
  return std::to_string(i) + "_" + std::to_string(a);
}

std::string Tag(int i, int h, int s) {
  return std::to_string(i) + "_" + std::to_string(h) + "_" + std::to_string(s);
}

std::string Tag(int i, int h, int s, std::size_t a) {
  return Tag(i, h, s) + "_" + std::to_string(a);
}

// t >= x - base and t >= base - x, with `weight` t added to the objective.
void AddAbsoluteDeviation(LinearProgram& lp, int x, double base,
                          double weight, const std::string& name) {
  if (weight == 0.0) return;
  const int t = lp.AddVariable(0.0, kLpInfinity, weight, "t_" + name);
  lp.AddConstraint({{t, 1.0}, {x, -1.0}}, Relation::kGreaterEqual, -base,
                   "abs_hi_" + name);
  lp.AddConstraint({{t, 1.0}, {x, 1.0}}, Relation::kGreaterEqual, base,
                   "abs_lo_" + name);
}

// Adds z <= value_i for every player (value_i given as linear terms) and
// minimizes -z.
void AddEgalitarian(LinearProgram& lp,
                    const std::vector<std::vector<LinearTerm>>& values,
                    double magnitude) {
  const int z = lp.AddVariable(-magnitude, magnitude, -1.0, "z");
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<LinearTerm> terms = values[i];
    for (LinearTerm& t : terms) t.coef = -t.coef;
    terms.push_back({z, 1.0});
    lp.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0,
                     "egalitarian_" + std::to_string(i));
  }
}

void CheckTarget(const JointMixedStrategy& sigma, Concept solution) {
  if (solution == Concept::kNash && !sigma.IsProduct()) {
    throw Error(ErrorCode::kPrecondition,
                "Nash reward design needs a product target");
  }
}

int AddSlackVariable(LinearProgram& lp, const DesignConfig& config,
                     double magnitude) {
  if (!config.maximize_slack) return -1;
  return lp.AddVariable(0.0, magnitude, -1.0, "iota");
}

DesignResult Unsolved(const LpSolution& solution) {
  if (solution.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kInternal, "reward design program is unbounded");
  }
  DesignResult result;
  result.status = solution.status;
  result.iterations = solution.iterations;
  return result;
}

}  // namespace

void DesignConfig::Validate() const {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::kInvalidInput, "bound must be positive and finite");
  }
  if (!maximize_slack && (!(slack > 0.0) || !std::isfinite(slack))) {
    throw Error(ErrorCode::kInvalidInput, "slack must be positive and finite");
  }
}

int AppendGapRows(LinearProgram& lp, const JointMixedStrategy& stage,
                  Concept solution, double slack, int slack_var,
                  const PayoffVar& var_of, const PayoffOffset& offset,
                  const std::string& prefix) {
  const ActionShape& shape = stage.shape();
  const std::size_t joint = shape.num_joint();
  std::vector<double> coef(joint);
  int added = 0;
  auto emit = [&](int i, const std::string& name) {
    std::vector<LinearTerm> terms;
    double constant = 0.0;
    for (std::size_t a = 0; a < joint; ++a) {
      if (coef[a] == 0.0) continue;
      terms.push_back({var_of(i, a), coef[a]});
      constant += coef[a] * offset(i, a);
    }
    double rhs = -constant;
    if (slack_var >= 0) {
      terms.push_back({slack_var, -1.0});
    } else {
      rhs += slack;
    }
    lp.AddConstraint(std::move(terms), Relation::kGreaterEqual, rhs,
                     prefix + name);
    ++added;
  };

  for (int i = 0; i < shape.num_players(); ++i) {
    const int num_actions = shape.num_actions(i);
    if (num_actions < 2) continue;
    if (solution == Concept::kCorrelated) {
      const PlayerConditionals cond = ConditionalsOf(stage, i);
      for (int j = 0; j < num_actions; ++j) {
        if (!cond.supported(j)) continue;
        const std::span<const double> row = cond.row(j);
        for (int k = 0; k < num_actions; ++k) {
          if (k == j) continue;
          std::fill(coef.begin(), coef.end(), 0.0);
          for (std::size_t o = 0; o < row.size(); ++o) {
            if (row[o] == 0.0) continue;
            coef[shape.JointIndex(i, j, o)] += row[o];
            coef[shape.JointIndex(i, k, o)] -= row[o];
          }
          emit(i, "ce_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                      std::to_string(k));
        }
      }
      continue;
    }
    const int target = PointMassAction(stage.Marginal(i));
    for (int m = 0; m < num_actions; ++m) {
      if (m == target) continue;
      std::fill(coef.begin(), coef.end(), 0.0);
      for (std::size_t a = 0; a < joint; ++a) {
        if (stage[a] == 0.0) continue;
        coef[a] += stage[a];
        coef[shape.Deviate(a, i, m)] -= stage[a];
      }
      emit(i, "dev_" + std::to_string(i) + "_" + std::to_string(m));
    }
  }
  return added;
}

NfgProgram BuildNfgLp(const JointMixedStrategy& sigma, const CostSpec& cost,
                      const DesignConfig& config) {
  config.Validate();
  CheckTarget(sigma, config.solution);
  const ActionShape& shape = sigma.shape();
  const int n = shape.num_players();
  const std::size_t joint = shape.num_joint();
  const double b = config.bound;

  NfgProgram program;
  LinearProgram& lp = program.lp;
  program.layout.u = 0;
  for (int i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < joint; ++a) {
      lp.AddVariable(-b, b, 0.0, "u_" + Tag(i, a));
    }
  }
  auto u = [joint](int i, std::size_t a) {
    return static_cast<int>(static_cast<std::size_t>(i) * joint + a);
  };
  program.layout.slack = AddSlackVariable(lp, config, 2.0 * b);
  AppendGapRows(lp, sigma, config.solution, config.slack, program.layout.slack,
                u, [](int, std::size_t) { return 0.0; }, "gap_");
  if (config.maximize_slack) return program;

  switch (cost.kind) {
    case CostKind::kOnline:
    case CostKind::kOffline: {
      const RewardTensor& base =
          ResolveBaseline(cost, MarkovGameSkeleton::NormalForm(shape));
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < joint; ++a) {
          const double w = cost.kind == CostKind::kOnline ? sigma[a] : 1.0;
          AddAbsoluteDeviation(lp, u(i, a), base.at(i, 0, 0, a), w, Tag(i, a));
        }
      }
      break;
    }
    case CostKind::kSocialWelfare:
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < joint; ++a) {
          lp.AddObjectiveCoefficient(u(i, a), -sigma[a]);
        }
      }
      break;
    case CostKind::kEgalitarian: {
      std::vector<std::vector<LinearTerm>> values(n);
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < joint; ++a) {
          if (sigma[a] != 0.0) values[i].push_back({u(i, a), sigma[a]});
        }
      }
      AddEgalitarian(lp, values, b);
      break;
    }
  }
  return program;
}

MgProgram BuildMgLp(const MarkovGameSkeleton& game, const MarkovPolicy& policy,
                    const CostSpec& cost, const DesignConfig& config) {
  config.Validate();
  policy.CheckCompatible(game);
  for (const JointMixedStrategy& stage : policy.stages()) {
    CheckTarget(stage, config.solution);
  }
  const int n = game.num_players();
  const int horizon = game.horizon();
  const int num_states = game.num_states();
  const std::size_t joint = game.num_joint();
  const double b = config.bound;

  MgProgram program;
  LinearProgram& lp = program.lp;
  MgLayout& L = program.layout;
  L.players = n;
  L.horizon = horizon;
  L.states = num_states;
  L.joint = joint;

  // Q and V are boxed by their implied ranges (|r| <= B over H - h stages),
  // which keeps every column bounded without changing the feasible set.
  L.r = lp.num_vars();
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < horizon; ++h)
      for (int s = 0; s < num_states; ++s)
        for (std::size_t a = 0; a < joint; ++a)
          lp.AddVariable(-b, b, 0.0, "r_" + Tag(i, h, s, a));
  L.q = lp.num_vars();
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < horizon; ++h)
      for (int s = 0; s < num_states; ++s)
        for (std::size_t a = 0; a < joint; ++a) {
          const double range = b * (horizon - h);
          lp.AddVariable(-range, range, 0.0, "q_" + Tag(i, h, s, a));
        }
  L.v = lp.num_vars();
  for (int i = 0; i < n; ++i)
    for (int h = 0; h <= horizon; ++h)
      for (int s = 0; s < num_states; ++s) {
        const double range = b * (horizon - h);
        lp.AddVariable(-range, range, 0.0, "v_" + Tag(i, h, s));
      }
  L.slack = AddSlackVariable(lp, config, 2.0 * b * horizon);

  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < horizon; ++h) {
      for (int s = 0; s < num_states; ++s) {
        // Q = r + P V_{h+1}.
        for (std::size_t a = 0; a < joint; ++a) {
          std::vector<LinearTerm> terms{{L.Q(i, h, s, a), 1.0},
                                        {L.R(i, h, s, a), -1.0}};
          if (h + 1 < horizon) {
            const std::span<const double> p = game.NextStateDist(h, s, a);
            for (int s2 = 0; s2 < num_states; ++s2) {
              if (p[s2] != 0.0) terms.push_back({L.V(i, h + 1, s2), -p[s2]});
            }
          }
          lp.AddConstraint(std::move(terms), Relation::kEqual, 0.0,
                           "bellman_q_" + Tag(i, h, s, a));
        }
        // V = sum_a pi(a) Q.
        const JointMixedStrategy& pi = policy.stage(h, s);
        std::vector<LinearTerm> terms{{L.V(i, h, s), 1.0}};
        for (std::size_t a = 0; a < joint; ++a) {
          if (pi[a] != 0.0) terms.push_back({L.Q(i, h, s, a), -pi[a]});
        }
        lp.AddConstraint(std::move(terms), Relation::kEqual, 0.0,
                         "bellman_v_" + Tag(i, h, s));
      }
    }
  }
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      AppendGapRows(
          lp, policy.stage(h, s), config.solution, config.slack, L.slack,
          [&](int i, std::size_t a) { return L.Q(i, h, s, a); },
          [](int, std::size_t) { return 0.0; },
          "gap_" + std::to_string(h) + "_" + std::to_string(s) + "_");
    }
  }
  if (config.maximize_slack) return program;

  switch (cost.kind) {
    case CostKind::kOnline:
    case CostKind::kOffline: {
      const RewardTensor& base = ResolveBaseline(cost, game);
      Visitation mu;
      if (cost.kind == CostKind::kOnline) mu = ComputeVisitation(game, policy);
      for (int i = 0; i < n; ++i)
        for (int h = 0; h < horizon; ++h)
          for (int s = 0; s < num_states; ++s)
            for (std::size_t a = 0; a < joint; ++a) {
              const double w =
                  cost.kind == CostKind::kOnline ? mu.at(h, s, a) : 1.0;
              AddAbsoluteDeviation(lp, L.R(i, h, s, a), base.at(i, h, s, a),
                                   w, Tag(i, h, s, a));
            }
      break;
    }
    case CostKind::kSocialWelfare:
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < num_states; ++s)
          lp.AddObjectiveCoefficient(L.V(i, 0, s), -game.initial_dist()[s]);
      break;
    case CostKind::kEgalitarian: {
      std::vector<std::vector<LinearTerm>> values(n);
      for (int i = 0; i < n; ++i)
        for (int s = 0; s < num_states; ++s)
          if (game.initial_dist()[s] != 0.0)
            values[i].push_back({L.V(i, 0, s), game.initial_dist()[s]});
      AddEgalitarian(lp, values, b * horizon);
      break;
    }
  }
  return program;
}

DesignResult DesignNfg(const JointMixedStrategy& sigma, const CostSpec& cost,
                       const DesignConfig& config) {
  const NfgProgram program = BuildNfgLp(sigma, cost, config);
  const LpSolution solution = Solve(program.lp, config.simplex);
  if (solution.status != LpStatus::kOptimal) return Unsolved(solution);

  const ActionShape& shape = sigma.shape();
  RewardTensor r =
      RewardTensor::Zero(shape.num_players(), 1, 1, shape.num_joint());
  for (std::size_t k = 0; k < r.data.size(); ++k) {
    r.data[k] = solution.point[program.layout.u + k];
  }
  DesignResult result;
  result.status = LpStatus::kOptimal;
  result.reward = RewardFunction::Create(std::move(r), config.bound);
  result.iterations = solution.iterations;
  if (config.maximize_slack) {
    result.slack = solution.point[program.layout.slack];
    result.objective = result.slack;
  } else {
    result.slack = config.slack;
    result.objective = solution.objective_value;
  }
  return result;
}

DesignResult DesignMg(const MarkovGameSkeleton& game,
                      const MarkovPolicy& policy, const CostSpec& cost,
                      const DesignConfig& config) {
  const MgProgram program = BuildMgLp(game, policy, cost, config);
  const LpSolution solution = Solve(program.lp, config.simplex);
  if (solution.status != LpStatus::kOptimal) return Unsolved(solution);

  RewardTensor r = game.ZeroRewards();
  for (std::size_t k = 0; k < r.data.size(); ++k) {
    r.data[k] = solution.point[program.layout.r + k];
  }
  DesignResult result;
  result.status = LpStatus::kOptimal;
  result.reward = RewardFunction::Create(std::move(r), config.bound);
  result.iterations = solution.iterations;
  if (config.maximize_slack) {
    result.slack = solution.point[program.layout.slack];
    result.objective = result.slack;
  } else {
    result.slack = config.slack;
    result.objective = solution.objective_value;
  }
  return result;
}

DesignResult GreedyBackwardDesign(const MarkovGameSkeleton& game,
                                  const MarkovPolicy& policy,
                                  const CostSpec& cost,
                                  const DesignConfig& config) {
  config.Validate();
  if (config.maximize_slack) {
    throw Error(ErrorCode::kPrecondition,
                "greedy design does not support slack maximization");
  }
  policy.CheckCompatible(game);
  const int n = game.num_players();
  const int horizon = game.horizon();
  const int num_states = game.num_states();
  const std::size_t joint = game.num_joint();
  const double b = config.bound;
  const RewardTensor* base =
      NeedsBaseline(cost.kind) ? &ResolveBaseline(cost, game) : nullptr;
  Visitation mu;
  if (cost.kind == CostKind::kOnline) mu = ComputeVisitation(game, policy);

  DesignResult result;
  RewardTensor r = game.ZeroRewards();
  // V_{i,h+1}(s) of the already fixed later stages.
  std::vector<double> next(static_cast<std::size_t>(n) * num_states, 0.0);
  for (int h = horizon - 1; h >= 0; --h) {
    std::vector<double> current(next.size(), 0.0);
    for (int s = 0; s < num_states; ++s) {
      const JointMixedStrategy& pi = policy.stage(h, s);
      CheckTarget(pi, config.solution);
      std::vector<double> continuation(static_cast<std::size_t>(n) * joint);
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < joint; ++a) {
          const std::span<const double> p = game.NextStateDist(h, s, a);
          double c = 0.0;
          for (int s2 = 0; s2 < num_states; ++s2) {
            c += p[s2] * next[static_cast<std::size_t>(i) * num_states + s2];
          }
          continuation[static_cast<std::size_t>(i) * joint + a] = c;
        }
      }
      LinearProgram lp;
      for (int i = 0; i < n; ++i)
        for (std::size_t a = 0; a < joint; ++a)
          lp.AddVariable(-b, b, 0.0, "r_" + Tag(i, a));
      auto var = [joint](int i, std::size_t a) {
        return static_cast<int>(static_cast<std::size_t>(i) * joint + a);
      };
      AppendGapRows(
          lp, pi, config.solution, config.slack, -1, var,
          [&](int i, std::size_t a) {
            return continuation[static_cast<std::size_t>(i) * joint + a];
          },
          "gap_");
      switch (cost.kind) {
        case CostKind::kOnline:
        case CostKind::kOffline:
          for (int i = 0; i < n; ++i)
            for (std::size_t a = 0; a < joint; ++a)
              AddAbsoluteDeviation(
                  lp, var(i, a), base->at(i, h, s, a),
                  cost.kind == CostKind::kOnline ? mu.at(h, s, a) : 1.0,
                  Tag(i, a));
          break;
        case CostKind::kSocialWelfare:
          for (int i = 0; i < n; ++i)
            for (std::size_t a = 0; a < joint; ++a)
              lp.AddObjectiveCoefficient(var(i, a), -pi[a]);
          break;
        case CostKind::kEgalitarian: {
          std::vector<std::vector<LinearTerm>> values(n);
          for (int i = 0; i < n; ++i)
            for (std::size_t a = 0; a < joint; ++a)
              if (pi[a] != 0.0) values[i].push_back({var(i, a), pi[a]});
          AddEgalitarian(lp, values, b * horizon);
          break;
        }
      }
      const LpSolution solution = Solve(lp, config.simplex);
      result.iterations += solution.iterations;
      if (solution.status != LpStatus::kOptimal) {
        DesignResult failed = Unsolved(solution);
        failed.iterations = result.iterations;
        return failed;
      }
      for (int i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t a = 0; a < joint; ++a) {
          const double x = solution.point[var(i, a)];
          r.at(i, h, s, a) = x;
          v += pi[a] * (x + continuation[static_cast<std::size_t>(i) * joint + a]);
        }
        current[static_cast<std::size_t>(i) * num_states + s] = v;
      }
    }
    next = std::move(current);
  }
  result.status = LpStatus::kOptimal;
  result.slack = config.slack;
  result.objective = EvaluateCost(game, policy, r, cost);
  result.reward = RewardFunction::Create(std::move(r), config.bound);
  return result;
}

}  // namespace strictrd
