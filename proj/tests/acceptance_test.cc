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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "strictrd/error.h"
#include "strictrd/installability.h"
#include "strictrd/lp.h"
#include "strictrd/reward_design.h"
#include "strictrd/verifier.h"
#include "strictrd/witness.h"
#include "test_support.h"

namespace strictrd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;

  void Check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) std::fprintf(stderr, "  failed: %s\n", what.c_str());
    pass = false;
  }
};

std::string Fmt(const char* format, double a, double b = 0.0,
                double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// 2x2 strategies on a 1/6 grid and 3x2 strategies on a 1/4 grid; many sit
// on the boundary of the simplex.
std::vector<JointMixedStrategy> StrategyGrid() {
  std::vector<JointMixedStrategy> grid;
  for (const auto& p : testing::Compositions(4, 6)) {
    grid.push_back(JointMixedStrategy::Create(ActionShape({2, 2}), p));
  }
  for (const auto& p : testing::Compositions(6, 4)) {
    grid.push_back(JointMixedStrategy::Create(ActionShape({3, 2}), p));
  }
  return grid;
}

GapConstant Gamma(const JointMixedStrategy& sigma, Concept c) {
  return c == Concept::kCorrelated ? GammaCorrelated(sigma)
                                   : GammaCoarseCorrelated(sigma);
}

CostSpec ZeroOffline(const ActionShape& shape) {
  return {CostKind::kOffline,
          RewardTensor::Zero(shape.num_players(), 1, 1, shape.num_joint())};
}

Outcome CharacterizationMatchesLp() {
  Outcome out;
  int installable = 0;
  int cases = 0;
  for (const JointMixedStrategy& sigma : StrategyGrid()) {
    for (Concept c : {Concept::kCorrelated, Concept::kCoarseCorrelated}) {
      ++cases;
      const GapConstant gamma = Gamma(sigma, c);
      const bool verdict = CheckInstallable(sigma, c).installable;
      DesignConfig cfg;
      cfg.solution = c;
      if (verdict) {
        ++installable;
        cfg.slack = gamma.value / 2.0;
        cfg.bound = 1.0;
      } else {
        cfg.slack = 1e-6;
        cfg.bound = 1e3;
      }
      const bool feasible =
          DesignNfg(sigma, ZeroOffline(sigma.shape()), cfg).feasible();
      out.Check(feasible == verdict && gamma.installable == verdict,
                "verdict/LP disagreement");
    }
  }
  out.detail = std::to_string(cases) + " cases, " +
               std::to_string(installable) + " installable, " +
               std::to_string(out.failures) + " disagreements";
  return out;
}

Outcome WitnessSoundness() {
  Outcome out;
  int checked = 0;
  double worst = 0.0;
  const MarkovGameSkeleton dummy = MarkovGameSkeleton::NormalForm(ActionShape({2, 2}));
  for (const JointMixedStrategy& sigma : StrategyGrid()) {
    const MarkovGameSkeleton game =
        MarkovGameSkeleton::NormalForm(sigma.shape());
    for (Concept c : {Concept::kCorrelated, Concept::kCoarseCorrelated}) {
      const GapConstant gamma = Gamma(sigma, c);
      if (!gamma.installable) continue;
      const NormalFormGame w = WitnessUtility(sigma);
      const GapReport r =
          CheckStrict(game, EmbedUtility(w, 1.0).rewards,
                      MarkovPolicy::FromStrategy(sigma), c);
      out.Check(r.strict, "witness not strict");
      const double err = std::abs(r.min_gap - gamma.value);
      worst = std::max(worst, err);
      out.Check(err <= 1e-9, "min_gap differs from gamma");
      ++checked;
    }
  }
  const JointMixedStrategy corr = testing::SigmaCorr();
  const RewardTensor wc = EmbedUtility(WitnessUtility(corr), 1.0).rewards;
  const MarkovPolicy pc = MarkovPolicy::FromStrategy(corr);
  const double ce = CheckStrict(dummy, wc, pc, Concept::kCorrelated).min_gap;
  const double cce =
      CheckStrict(dummy, wc, pc, Concept::kCoarseCorrelated).min_gap;
  out.Check(ce == 1.0 && cce == 0.5, "sigma_corr gaps");
  out.detail = std::to_string(checked) +
               " witnesses, max |min_gap - gamma| = " + Fmt("%.2e", worst) +
               Fmt(", sigma_corr gaps %.17g / %.17g", ce, cce);
  return out;
}

Outcome EpsilonScaling() {
  Outcome out;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int built = 0;
  int rejected = 0;
  while (built < 50) {
    const int kind = built % 3;
    const ActionShape shape(built % 2 == 0 ? std::vector<int>{2, 2}
                                           : std::vector<int>{3, 2});
    const double bound = 0.5 + 2.5 * unit(rng);
    const Concept c = static_cast<Concept>(kind);
    const JointMixedStrategy sigma =
        c == Concept::kNash ? testing::RandomPure(rng, shape)
                            : testing::RandomStrategy(rng, shape, 0.3);
    if (c != Concept::kNash && !CheckInstallable(sigma, c).installable) {
      continue;
    }
    const DeviationClass cls = c == Concept::kCorrelated
                                   ? DeviationClass::kNeverRecommended
                                   : DeviationClass::kNeverTarget;
    if (c == Concept::kCorrelated) {
      // The never-recommended class needs an unplayed action per player.
      bool ok = true;
      for (int i = 0; i < shape.num_players(); ++i) {
        ok = ok && !AllowedActions(sigma, i, cls).empty();
      }
      if (!ok) continue;
    }
    const double max_gap = MaxInstallableGap(sigma, c, bound);
    const double eps =
        c == Concept::kNash ? max_gap * 0.999 * unit(rng) : max_gap * unit(rng);
    const NormalFormGame u = EpsilonWitness(sigma, {eps, bound, cls}, c);
    bool boxed = true;
    for (double x : u.utility) boxed = boxed && std::abs(x) <= bound;
    out.Check(boxed, "utility outside [-B, B]");
    const GapReport r = CheckStrict(MarkovGameSkeleton::NormalForm(shape),
                                    EmbedUtility(u, bound).rewards,
                                    MarkovPolicy::FromStrategy(sigma), c, cls,
                                    eps);
    out.Check(r.min_gap >= eps - 1e-9, "gap below epsilon");
    if (c == Concept::kNash) {
      out.Check(r.min_gap == 2.0 * bound, "Nash gap is not 2B");
    }
    const double over = c == Concept::kNash ? max_gap : max_gap * 1.001 + 1e-9;
    try {
      EpsilonWitness(sigma, {over, bound, cls}, c);
      out.Check(false, "epsilon above B * gamma accepted");
    } catch (const InfeasibleEpsilonError&) {
      ++rejected;
    }
    ++built;
  }
  out.detail = std::to_string(built) + " targets (NE/CE/CCE), " +
               std::to_string(rejected) + " over-large epsilons rejected";
  return out;
}

MarkovPolicy InstallablePolicy(std::mt19937_64& rng,
                               const MarkovGameSkeleton& game, Concept c) {
  std::vector<JointMixedStrategy> stages;
  for (int k = 0; k < game.horizon() * game.num_states(); ++k) {
    while (true) {
      JointMixedStrategy s = testing::RandomStrategy(rng, game.shape(), 0.25);
      if (CheckInstallable(s, c).installable) {
        stages.push_back(std::move(s));
        break;
      }
    }
  }
  return MarkovPolicy::Create(game.horizon(), game.num_states(),
                              std::move(stages), false);
}

ActionShape RandomShape(std::mt19937_64& rng, int max_actions) {
  std::uniform_int_distribution<int> a(2, max_actions);
  return ActionShape({a(rng), a(rng)});
}

Outcome MarkovWitnessBounds() {
  Outcome out;
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> small(1, 4);
  double worst_r = 0.0;
  double worst_v = 0.0;
  double min_gap = kInf;
  for (int g = 0; g < 50; ++g) {
    const MarkovGameSkeleton game =
        testing::RandomGame(rng, RandomShape(rng, 3), small(rng), small(rng));
    const Concept c =
        g % 2 == 0 ? Concept::kCorrelated : Concept::kCoarseCorrelated;
    const double bound = 1.0 + g % 3;
    const MarkovPolicy pi = InstallablePolicy(rng, game, c);
    const RewardFunction r = MarkovWitness(pi, game, bound, c);
    worst_r = std::max(worst_r, r.MaxAbs() / bound);
    out.Check(r.MaxAbs() <= bound, "|r| > B");
    const ValueTables v = PolicyEvaluation(game, r.rewards, pi);
    for (int i = 0; i < game.num_players(); ++i) {
      for (int h = 0; h < game.horizon(); ++h) {
        for (int s = 0; s < game.num_states(); ++s) {
          worst_v = std::max(worst_v, std::abs(v.V(i, h, s)) / bound);
          out.Check(std::abs(v.V(i, h, s)) <= bound / 2.0, "|V| > B/2");
        }
      }
    }
    const GapReport report = CheckStrict(game, r.rewards, pi, c);
    // Every (i, h, s) with a deviation must have a positive gap.
    for (const GapEntry& e : report.entries) {
      out.Check(e.gap > 0.0, "non-positive stage gap");
    }
    min_gap = std::min(min_gap, report.min_gap);
  }
  out.detail = Fmt("50 games, max |r|/B = %.6f, max |V|/B = %.6f, "
                   "smallest gap %.3e",
                   worst_r, worst_v, min_gap);
  return out;
}

Outcome MgDesignSoundness() {
  Outcome out;
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> small(1, 3);
  int designs = 0;
  double worst_gap = kInf;
  double worst_cost = 0.0;
  for (int g = 0; g < 24; ++g) {
    const MarkovGameSkeleton game = testing::RandomGame(
        rng, RandomShape(rng, 3), small(rng), small(rng), true);
    const Concept c = static_cast<Concept>(g % 3);
    MarkovPolicy pi = c == Concept::kNash
                          ? MarkovPolicy::Constant(
                                game.horizon(), game.num_states(),
                                testing::RandomPure(rng, game.shape()))
                          : InstallablePolicy(rng, game, c);
    double gamma = kInf;
    for (const JointMixedStrategy& stage : pi.stages()) {
      gamma = std::min(gamma, MaxInstallableGap(stage, c, 1.0));
    }
    for (int kind = 0; kind < 4; ++kind) {
      const CostSpec cost{static_cast<CostKind>(kind), {}};
      DesignConfig cfg;
      cfg.solution = c;
      cfg.bound = 1.0;
      cfg.slack = std::max(gamma / 4.0, 1e-4);
      const DesignResult r = DesignMg(game, pi, cost, cfg);
      out.Check(r.feasible(), "design infeasible below B*gamma/2");
      if (!r.feasible()) continue;
      ++designs;
      out.Check(r.reward.MaxAbs() <= cfg.bound + 1e-9, "|r| > B");
      const GapReport report =
          CheckStrict(game, r.reward.rewards, pi, c,
                      c == Concept::kNash ? DeviationClass::kNeverTarget
                                          : DeviationClass::kUnrestricted);
      worst_gap = std::min(worst_gap, report.min_gap - cfg.slack);
      out.Check(report.min_gap >= cfg.slack - 1e-6, "gap below iota");
      const double recomputed =
          EvaluateCost(game, pi, r.reward.rewards, cost);
      worst_cost = std::max(worst_cost, std::abs(recomputed - r.objective));
      out.Check(std::abs(recomputed - r.objective) <= 1e-6, "cost mismatch");
    }
  }
  out.detail = std::to_string(designs) +
               " optimal designs over 4 cost kinds" +
               Fmt(", min (gap - iota) = %.2e, max cost error = %.2e",
                   worst_gap, worst_cost);
  return out;
}

Outcome JointStageRegression() {
  Outcome out;
  const testing::BranchTrap trap = testing::MakeBranchTrap();
  DesignConfig cfg;
  cfg.solution = Concept::kCoarseCorrelated;
  cfg.slack = 0.2;
  cfg.bound = 1.0;
  const CostSpec cost{CostKind::kOffline, {}};
  const bool greedy =
      GreedyBackwardDesign(trap.game, trap.policy, cost, cfg).feasible();
  const DesignResult joint = DesignMg(trap.game, trap.policy, cost, cfg);
  out.Check(!greedy, "greedy design feasible");
  out.Check(joint.feasible(), "joint design infeasible");
  double gap = 0.0;
  if (joint.feasible()) {
    gap = CheckStrict(trap.game, joint.reward.rewards, trap.policy,
                      cfg.solution)
              .min_gap;
    out.Check(gap >= cfg.slack - 1e-6, "joint design not strict");
  }
  out.detail = std::string("greedy ") + (greedy ? "feasible" : "infeasible") +
               ", joint " + (joint.feasible() ? "feasible" : "infeasible") +
               Fmt(" (cost %.4f, min gap %.4f)", joint.objective, gap);
  return out;
}

Outcome LpSolverCorrectness() {
  Outcome out;
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> vars(1, 6);
  std::uniform_int_distribution<int> rows(1, 6);
  int infeasible = 0;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const LinearProgram lp = testing::RandomBoxedLp(rng, vars(rng), rows(rng));
    const auto oracle = testing::EnumerateVertices(lp);
    for (PivotRule rule : {PivotRule::kBland, PivotRule::kDantzig}) {
      SimplexOptions options;
      options.rule = rule;
      const LpSolution s = Solve(lp, options);
      if (!oracle) {
        out.Check(s.status == LpStatus::kInfeasible, "missed infeasibility");
        continue;
      }
      out.Check(s.status == LpStatus::kOptimal, "missed optimum");
      if (s.status != LpStatus::kOptimal) continue;
      const double err = std::abs(s.objective_value - oracle->objective);
      worst = std::max(worst, err);
      out.Check(err <= 1e-6 * std::max(1.0, std::abs(oracle->objective)),
                "objective mismatch");
    }
    infeasible += oracle ? 0 : 1;
  }
  LinearProgram inf;
  const int x = inf.AddVariable(0.0, 1.0, 1.0);
  inf.AddConstraint({{x, 1.0}}, Relation::kGreaterEqual, 2.0);
  LinearProgram unb;
  const int y = unb.AddVariable(0.0, kLpInfinity, -1.0);
  const int z = unb.AddVariable(-kLpInfinity, kLpInfinity, 0.0);
  unb.AddConstraint({{y, 1.0}, {z, -1.0}}, Relation::kGreaterEqual, 0.0);
  const bool trivial = Solve(inf).status == LpStatus::kInfeasible &&
                       Solve(unb).status == LpStatus::kUnbounded;
  out.Check(trivial, "trivial fixtures");
  out.detail = "500 LPs (" + std::to_string(infeasible) +
               " infeasible) x 2 pivot rules" +
               Fmt(", max objective error %.2e", worst) +
               ", trivial Infeasible/Unbounded " + (trivial ? "ok" : "wrong");
  return out;
}

Outcome VerifierConsistency() {
  Outcome out;
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 600; ++t) {
    const ActionShape shape = t % 3 == 0 ? ActionShape({2, 2, 2})
                                         : RandomShape(rng, 4);
    std::vector<double> util(shape.num_players() * shape.num_joint());
    for (double& x : util) x = unif(rng);
    const NormalFormGame u = NormalFormGame::Create(shape, util);
    const Concept c = static_cast<Concept>(t % 3);
    const JointMixedStrategy sigma =
        c == Concept::kNash ? testing::RandomProduct(rng, shape, 0.3)
                            : testing::RandomStrategy(rng, shape, 0.3);
    const GapReport a = NormalFormOracle(u, sigma, c);
    const GapReport b =
        CheckStrict(MarkovGameSkeleton::NormalForm(shape),
                    EmbedUtility(u, 1.0).rewards,
                    MarkovPolicy::FromStrategy(sigma), c);
    out.Check(a.entries.size() == b.entries.size(), "entry count");
    if (a.entries.size() != b.entries.size()) continue;
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
      worst = std::max(worst, std::abs(a.entries[k].gap - b.entries[k].gap));
    }
  }
  out.Check(worst <= 1e-12, "oracle disagreement above 1e-12");

  int exceeded = 0;
  long deviations = 0;
  double closest = kInf;
  for (int g = 0; g < 20; ++g) {
    const MarkovGameSkeleton game =
        testing::RandomGame(rng, RandomShape(rng, 3), 3, 3);
    const MarkovPolicy pi = testing::RandomPolicy(rng, game, 0.3);
    const RewardTensor r = testing::RandomRewards(rng, game, 1.0);
    std::vector<DeviationValues> best;
    for (int i = 0; i < game.num_players(); ++i) {
      best.push_back(BestResponse(game, r, pi, i, DeviationClass::kUnrestricted));
    }
    for (int d = 0; d < 2000; ++d) {
      const int i = d % game.num_players();
      std::vector<JointMixedStrategy> stages;
      for (const JointMixedStrategy& stage : pi.stages()) {
        stages.push_back(testing::Unilateral(
            stage, i,
            testing::RandomDistribution(rng, game.shape().num_actions(i),
                                        0.3)));
      }
      const MarkovPolicy dev = MarkovPolicy::Create(
          game.horizon(), game.num_states(), std::move(stages), false);
      const ValueTables v = PolicyEvaluation(game, r, dev);
      for (int h = 0; h < game.horizon(); ++h) {
        for (int s = 0; s < game.num_states(); ++s) {
          const double margin = best[i].at(h, s) - v.V(i, h, s);
          closest = std::min(closest, margin);
          if (margin < -1e-12) ++exceeded;
        }
      }
      ++deviations;
    }
  }
  out.Check(exceeded == 0, "random deviation beat the best response");
  out.detail = Fmt("600 H=1 embeddings, max oracle gap diff %.2e; ", worst) +
               std::to_string(deviations) + " stochastic deviations on 20 " +
               "games, " + std::to_string(exceeded) + " above best response" +
               Fmt(" (smallest margin %.2e)", closest);
  return out;
}

double SecondsPerCheck(const JointMixedStrategy& sigma) {
  using Clock = std::chrono::steady_clock;
  int reps = 0;
  const auto start = Clock::now();
  double elapsed = 0.0;
  std::vector<double> samples;
  while (elapsed < 0.3 || reps < 3) {
    const auto t0 = Clock::now();
    const InstallabilityReport r = CheckCoarseCorrelated(sigma);
    samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    if (!r.installable) std::fprintf(stderr, "  unexpected verdict\n");
    ++reps;
    elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

Outcome ComplexitySmoke() {
  Outcome out;
  std::mt19937_64 rng(127);
  std::vector<double> log_n;
  std::vector<double> log_t;
  std::string detail;
  for (int side : {32, 100, 316}) {
    const ActionShape shape({side, side});
    const JointMixedStrategy sigma = testing::RandomStrategy(rng, shape, 0.0);
    const double t = SecondsPerCheck(sigma);
    log_n.push_back(std::log(static_cast<double>(shape.num_joint())));
    log_t.push_back(std::log(t));
    detail += std::to_string(shape.num_joint()) + Fmt(": %.3g s; ", t);
  }
  const double mx = (log_n[0] + log_n[1] + log_n[2]) / 3.0;
  const double my = (log_t[0] + log_t[1] + log_t[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int k = 0; k < 3; ++k) {
    sxy += (log_n[k] - mx) * (log_t[k] - my);
    sxx += (log_n[k] - mx) * (log_n[k] - mx);
  }
  const double slope = sxy / sxx;
  out.Check(slope < 1.5, "runtime grows quadratically or faster");
  out.detail = detail + Fmt("log-log slope %.2f (< 1.5 required)", slope);
  return out;
}

}  // namespace
}  // namespace strictrd

int main() {
  using strictrd::Outcome;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"installability verdicts agree with LP feasibility",
       strictrd::CharacterizationMatchesLp},
      {"witness utility attains gamma", strictrd::WitnessSoundness},
      {"epsilon witnesses meet epsilon within [-B, B]",
       strictrd::EpsilonScaling},
      {"Markov witness bounds", strictrd::MarkovWitnessBounds},
      {"Markov design LP is sound and cost-consistent",
       strictrd::MgDesignSoundness},
      {"joint design succeeds where greedy per-stage design fails",
       strictrd::JointStageRegression},
      {"LP solver matches vertex enumeration", strictrd::LpSolverCorrectness},
      {"verifier is internally consistent", strictrd::VerifierConsistency},
      {"coarse-correlated check scales subquadratically",
       strictrd::ComplexitySmoke},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    std::printf("%s criterion %zu: %s -- %s [%.1fs]\n",
                o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
