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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "strictrd/installability.h"
#include "strictrd/lp.h"
#include "strictrd/reward_design.h"
#include "strictrd/verifier.h"
#include "strictrd/witness.h"

namespace strictrd {
namespace {

std::vector<double> Normalized(std::vector<double> p) {
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return p;
}

JointMixedStrategy RandomStrategy(std::mt19937_64& rng,
                                  const ActionShape& shape) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(shape.num_joint());
  for (double& x : p) x = u(rng);
  return JointMixedStrategy::Create(shape, Normalized(std::move(p)));
}

MarkovGameSkeleton RandomGame(std::mt19937_64& rng, const ActionShape& shape,
                              int states, int horizon) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> transitions;
  for (std::size_t k = 0;
       k < static_cast<std::size_t>(horizon) * states * shape.num_joint();
       ++k) {
    std::vector<double> row(states);
    for (double& x : row) x = u(rng) + 1e-3;
    row = Normalized(std::move(row));
    transitions.insert(transitions.end(), row.begin(), row.end());
  }
  RewardTensor base = RewardTensor::Zero(shape.num_players(), horizon, states,
                                         shape.num_joint());
  for (double& x : base.data) x = 2.0 * u(rng) - 1.0;
  return MarkovGameSkeleton::Create(shape, states, horizon,
                                    std::move(transitions),
                                    std::vector<double>(states, 1.0 / states),
                                    std::move(base));
}

MarkovPolicy RandomPolicy(std::mt19937_64& rng, const MarkovGameSkeleton& g) {
  std::vector<JointMixedStrategy> stages;
  for (int k = 0; k < g.horizon() * g.num_states(); ++k) {
    stages.push_back(RandomStrategy(rng, g.shape()));
  }
  return MarkovPolicy::Create(g.horizon(), g.num_states(), std::move(stages),
                              false);
}

// Side length of a two-player game; the joint size is its square.
void BM_CheckCoarseCorrelated(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int side = static_cast<int>(state.range(0));
  const JointMixedStrategy sigma = RandomStrategy(rng, ActionShape({side, side}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckCoarseCorrelated(sigma));
  }
  state.SetComplexityN(static_cast<long>(side) * side);
}
BENCHMARK(BM_CheckCoarseCorrelated)
    ->Arg(32)
    ->Arg(100)
    ->Arg(316)
    ->Complexity(benchmark::oN);

void BM_CheckCorrelated(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int side = static_cast<int>(state.range(0));
  const JointMixedStrategy sigma = RandomStrategy(rng, ActionShape({side, side}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckCorrelated(sigma));
  }
}
BENCHMARK(BM_CheckCorrelated)->Arg(8)->Arg(32)->Arg(100);

void BM_WitnessUtility(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int side = static_cast<int>(state.range(0));
  const JointMixedStrategy sigma = RandomStrategy(rng, ActionShape({side, side}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(WitnessUtility(sigma));
  }
}
BENCHMARK(BM_WitnessUtility)->Arg(32)->Arg(316);

void BM_DesignNfg(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const int side = static_cast<int>(state.range(0));
  const ActionShape shape({side, side});
  const JointMixedStrategy sigma = RandomStrategy(rng, shape);
  DesignConfig cfg;
  cfg.solution = Concept::kCoarseCorrelated;
  cfg.slack = 0.01;
  const CostSpec cost{CostKind::kOffline,
                      RewardTensor::Zero(2, 1, 1, shape.num_joint())};
  for (auto _ : state) {
    benchmark::DoNotOptimize(DesignNfg(sigma, cost, cfg));
  }
}
BENCHMARK(BM_DesignNfg)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DesignMg(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int states = static_cast<int>(state.range(0));
  const int horizon = static_cast<int>(state.range(1));
  const MarkovGameSkeleton game =
      RandomGame(rng, ActionShape({3, 3}), states, horizon);
  const MarkovPolicy pi = RandomPolicy(rng, game);
  DesignConfig cfg;
  cfg.solution = Concept::kCoarseCorrelated;
  cfg.slack = 0.01;
  cfg.simplex.rule = state.range(2) == 0 ? PivotRule::kBland
                                         : PivotRule::kDantzig;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DesignMg(game, pi, {CostKind::kOffline, {}}, cfg));
  }
}
BENCHMARK(BM_DesignMg)
    ->Args({2, 2, 0})
    ->Args({2, 2, 1})
    ->Args({4, 4, 1})
    ->Unit(benchmark::kMillisecond);

void BM_CheckStrict(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const int states = static_cast<int>(state.range(0));
  const MarkovGameSkeleton game =
      RandomGame(rng, ActionShape({4, 4}), states, 8);
  const MarkovPolicy pi = RandomPolicy(rng, game);
  const RewardTensor r = *game.baseline();
  const Concept c = state.range(1) == 0 ? Concept::kCorrelated
                                        : Concept::kCoarseCorrelated;
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckStrict(game, r, pi, c));
  }
}
BENCHMARK(BM_CheckStrict)->Args({4, 0})->Args({4, 1})->Args({16, 1});

}  // namespace
}  // namespace strictrd

BENCHMARK_MAIN();
