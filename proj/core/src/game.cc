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

#include "strictrd/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "strictrd/error.h"

namespace strictrd {

namespace {

std::string Str(std::string_view s) { return std::string(s); }

}  // namespace

ActionShape::ActionShape(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw Error(ErrorCode::kShape, "action shape needs at least one player");
  }
  strides_.assign(sizes_.size(), 1);
  num_joint_ = 1;
  for (int i = static_cast<int>(sizes_.size()) - 1; i >= 0; --i) {
    if (sizes_[i] < 1) {
      throw Error(ErrorCode::kShape, "player " + std::to_string(i) +
                                         " has an empty action set");
    }
    strides_[i] = num_joint_;
    num_joint_ *= static_cast<std::size_t>(sizes_[i]);
  }
}

int ActionShape::num_actions(int player) const {
  CheckPlayer(player);
  return sizes_[player];
}

std::size_t ActionShape::num_opponent_joint(int player) const {
  CheckPlayer(player);
  return num_joint_ / static_cast<std::size_t>(sizes_[player]);
}

std::vector<int> ActionShape::Decode(std::size_t joint) const {
  if (joint >= num_joint_) {
    throw Error(ErrorCode::kShape, "joint action index out of range");
  }
  std::vector<int> actions(sizes_.size());
  for (int i = 0; i < num_players(); ++i) actions[i] = ActionOf(joint, i);
  return actions;
}

std::size_t ActionShape::Encode(std::span<const int> actions) const {
  if (actions.size() != sizes_.size()) {
    throw Error(ErrorCode::kShape, "joint action has wrong arity");
  }
  std::size_t joint = 0;
  for (int i = 0; i < num_players(); ++i) {
    CheckAction(i, actions[i]);
    joint += static_cast<std::size_t>(actions[i]) * strides_[i];
  }
  return joint;
}

void ActionShape::CheckPlayer(int player) const {
  if (player < 0 || player >= num_players()) {
    throw Error(ErrorCode::kShape,
                "player index " + std::to_string(player) + " out of range");
  }
}

void ActionShape::CheckAction(int player, int action) const {
  CheckPlayer(player);
  if (action < 0 || action >= sizes_[player]) {
    throw Error(ErrorCode::kShape, "action " + std::to_string(action) +
                                       " out of range for player " +
                                       std::to_string(player));
  }
}

std::vector<double> NormalizeDistribution(std::vector<double> values,
                                          std::string_view what) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidInput, Str(what) + ": empty distribution");
  }
  double sum = 0.0;
  for (double& p : values) {
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidInput,
                  Str(what) + ": non-finite probability");
    }
    if (p < -kNegativeClamp) {
      throw Error(ErrorCode::kInvalidInput,
                  Str(what) + ": negative probability " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kInvalidInput,
                Str(what) + ": probabilities sum to " + std::to_string(sum) +
                    ", expected 1");
  }
  for (double& p : values) p /= sum;
  return values;
}

JointMixedStrategy JointMixedStrategy::Create(ActionShape shape,
                                              std::vector<double> probs) {
  if (probs.size() != shape.num_joint()) {
    throw Error(ErrorCode::kShape,
                "strategy has " + std::to_string(probs.size()) +
                    " entries, shape needs " +
                    std::to_string(shape.num_joint()));
  }
  probs = NormalizeDistribution(std::move(probs), "joint strategy");
  return JointMixedStrategy(std::move(shape), std::move(probs));
}

JointMixedStrategy JointMixedStrategy::PointMass(ActionShape shape,
                                                 std::span<const int> actions) {
  std::vector<double> probs(shape.num_joint(), 0.0);
  probs[shape.Encode(actions)] = 1.0;
  return JointMixedStrategy(std::move(shape), std::move(probs));
}

JointMixedStrategy JointMixedStrategy::Uniform(ActionShape shape) {
  std::vector<double> probs(shape.num_joint(),
                            1.0 / static_cast<double>(shape.num_joint()));
  return JointMixedStrategy(std::move(shape), std::move(probs));
}

JointMixedStrategy JointMixedStrategy::Product(
    const std::vector<std::vector<double>>& marginals) {
  std::vector<int> sizes;
  std::vector<std::vector<double>> normalized;
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    sizes.push_back(static_cast<int>(marginals[i].size()));
    normalized.push_back(NormalizeDistribution(
        marginals[i], "marginal of player " + std::to_string(i)));
  }
  ActionShape shape(std::move(sizes));
  std::vector<double> probs(shape.num_joint(), 1.0);
  for (std::size_t a = 0; a < shape.num_joint(); ++a) {
    for (int i = 0; i < shape.num_players(); ++i) {
      probs[a] *= normalized[i][shape.ActionOf(a, i)];
    }
  }
  return JointMixedStrategy(std::move(shape), std::move(probs));
}

std::vector<double> JointMixedStrategy::Marginal(int player) const {
  std::vector<double> marginal(shape_.num_actions(player), 0.0);
  for (std::size_t a = 0; a < probs_.size(); ++a) {
    marginal[shape_.ActionOf(a, player)] += probs_[a];
  }
  return marginal;
}

std::vector<double> JointMixedStrategy::OpponentMarginal(int player) const {
  std::vector<double> marginal(shape_.num_opponent_joint(player), 0.0);
  for (std::size_t a = 0; a < probs_.size(); ++a) {
    marginal[shape_.OpponentIndex(a, player)] += probs_[a];
  }
  return marginal;
}

bool JointMixedStrategy::IsProduct(double tolerance) const {
  std::vector<std::vector<double>> marginals;
  for (int i = 0; i < shape_.num_players(); ++i) {
    marginals.push_back(Marginal(i));
  }
  for (std::size_t a = 0; a < probs_.size(); ++a) {
    double product = 1.0;
    for (int i = 0; i < shape_.num_players(); ++i) {
      product *= marginals[i][shape_.ActionOf(a, i)];
    }
    if (std::abs(product - probs_[a]) > tolerance) return false;
  }
  return true;
}

PlayerConditionals ConditionalsOf(const JointMixedStrategy& sigma,
                                  int player) {
  const ActionShape& shape = sigma.shape();
  PlayerConditionals out;
  out.player = player;
  out.opponent_count = shape.num_opponent_joint(player);
  const int actions = shape.num_actions(player);
  out.mass.assign(actions, 0.0);
  out.dist.assign(static_cast<std::size_t>(actions) * out.opponent_count, 0.0);
  const auto probs = sigma.probs();
  for (std::size_t a = 0; a < probs.size(); ++a) {
    const int j = shape.ActionOf(a, player);
    out.mass[j] += probs[a];
    out.dist[static_cast<std::size_t>(j) * out.opponent_count +
             shape.OpponentIndex(a, player)] = probs[a];
  }
  for (int j = 0; j < actions; ++j) {
    if (out.mass[j] <= 0.0) continue;
    double* row = out.dist.data() + static_cast<std::size_t>(j) * out.opponent_count;
    for (std::size_t k = 0; k < out.opponent_count; ++k) row[k] /= out.mass[j];
  }
  return out;
}

Conditional ConditionalOf(const JointMixedStrategy& sigma, int player,
                          int action) {
  sigma.shape().CheckAction(player, action);
  const ActionShape& shape = sigma.shape();
  Conditional c;
  c.player = player;
  c.action = action;
  c.dist.assign(shape.num_opponent_joint(player), 0.0);
  for (std::size_t k = 0; k < c.dist.size(); ++k) {
    c.dist[k] = sigma[shape.JointIndex(player, action, k)];
    c.mass += c.dist[k];
  }
  if (c.mass > 0.0) {
    for (double& x : c.dist) x /= c.mass;
  } else {
    std::fill(c.dist.begin(), c.dist.end(), 0.0);
  }
  return c;
}

std::vector<int> Support(const JointMixedStrategy& sigma, int player) {
  const auto marginal = sigma.Marginal(player);
  std::vector<int> support;
  for (int j = 0; j < static_cast<int>(marginal.size()); ++j) {
    if (marginal[j] > 0.0) support.push_back(j);
  }
  return support;
}

double L2Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double CosineGap(std::span<const double> c1, std::span<const double> c2) {
  if (c1.size() != c2.size()) {
    throw Error(ErrorCode::kShape, "conditionals over different spaces");
  }
  const double n1 = L2Norm(c1);
  if (n1 == 0.0) {
    throw Error(ErrorCode::kDomain, "cosine gap of an all-zero conditional");
  }
  const double n2 = L2Norm(c2);
  if (n2 == 0.0) return n1;
  double dot = 0.0;
  for (std::size_t k = 0; k < c1.size(); ++k) dot += c1[k] * c2[k];
  // ||c1|| - <c1, c2>/||c2||, which is exactly 0 for identical inputs.
  if (std::equal(c1.begin(), c1.end(), c2.begin())) return 0.0;
  return std::max(0.0, n1 - dot / n2);
}

double CosineGap(const Conditional& c1, const Conditional& c2) {
  if (c1.player != c2.player) {
    throw Error(ErrorCode::kShape, "conditionals of different players");
  }
  return CosineGap(std::span<const double>(c1.dist),
                   std::span<const double>(c2.dist));
}

bool SameConditional(std::span<const double> a, std::span<const double> b,
                     double tolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tolerance) return false;
  }
  return true;
}

NormalFormGame NormalFormGame::Create(ActionShape shape,
                                      std::vector<double> utility) {
  const std::size_t expected =
      static_cast<std::size_t>(shape.num_players()) * shape.num_joint();
  if (utility.size() != expected) {
    throw Error(ErrorCode::kShape, "utility tensor has " +
                                       std::to_string(utility.size()) +
                                       " entries, expected " +
                                       std::to_string(expected));
  }
  for (double x : utility) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite utility entry");
    }
  }
  return NormalFormGame{std::move(shape), std::move(utility)};
}

NormalFormGame NormalFormGame::Zero(ActionShape shape) {
  std::vector<double> utility(
      static_cast<std::size_t>(shape.num_players()) * shape.num_joint(), 0.0);
  return NormalFormGame{std::move(shape), std::move(utility)};
}

RewardTensor RewardTensor::Zero(int players, int horizon, int states,
                                std::size_t joint) {
  RewardTensor t;
  t.players = players;
  t.horizon = horizon;
  t.states = states;
  t.joint = joint;
  t.data.assign(static_cast<std::size_t>(players) * horizon * states * joint,
                0.0);
  return t;
}

RewardFunction RewardFunction::Create(RewardTensor rewards, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::kInvalidInput, "reward bound must be positive");
  }
  for (double x : rewards.data) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite reward entry");
    }
    if (std::abs(x) > bound) {
      throw Error(ErrorCode::kInvalidInput,
                  "reward entry " + std::to_string(x) +
                      " exceeds bound " + std::to_string(bound));
    }
  }
  return RewardFunction{std::move(rewards), bound};
}

double RewardFunction::MaxAbs() const {
  double m = 0.0;
  for (double x : rewards.data) m = std::max(m, std::abs(x));
  return m;
}

MarkovGameSkeleton MarkovGameSkeleton::Create(
    ActionShape shape, int num_states, int horizon,
    std::vector<double> transitions, std::vector<double> initial_dist,
    std::optional<RewardTensor> baseline) {
  if (num_states < 1) {
    throw Error(ErrorCode::kShape, "game needs at least one state");
  }
  if (horizon < 1) throw Error(ErrorCode::kShape, "horizon must be >= 1");
  const std::size_t joint = shape.num_joint();
  const std::size_t rows =
      static_cast<std::size_t>(horizon) * num_states * joint;
  if (transitions.size() != rows * num_states) {
    throw Error(ErrorCode::kShape, "transition tensor has wrong size");
  }
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      for (std::size_t a = 0; a < joint; ++a) {
        const std::size_t offset =
            ((static_cast<std::size_t>(h) * num_states + s) * joint + a) *
            num_states;
        std::vector<double> row(transitions.begin() + offset,
                                transitions.begin() + offset + num_states);
        row = NormalizeDistribution(
            std::move(row), "transitions[" + std::to_string(h) + "][" +
                                std::to_string(s) + "][" + std::to_string(a) +
                                "]");
        std::copy(row.begin(), row.end(), transitions.begin() + offset);
      }
    }
  }
  if (initial_dist.size() != static_cast<std::size_t>(num_states)) {
    throw Error(ErrorCode::kShape, "initial distribution has wrong size");
  }
  initial_dist = NormalizeDistribution(std::move(initial_dist), "initial_dist");
  if (baseline) {
    if (baseline->players != shape.num_players() ||
        baseline->horizon != horizon || baseline->states != num_states ||
        baseline->joint != joint ||
        baseline->data.size() != rows * shape.num_players()) {
      throw Error(ErrorCode::kShape, "baseline reward has wrong shape");
    }
    for (double x : baseline->data) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kInvalidInput, "non-finite baseline reward");
      }
    }
  }
  MarkovGameSkeleton g;
  g.shape_ = std::move(shape);
  g.num_states_ = num_states;
  g.horizon_ = horizon;
  g.transitions_ = std::move(transitions);
  g.initial_dist_ = std::move(initial_dist);
  g.baseline_ = std::move(baseline);
  return g;
}

MarkovGameSkeleton MarkovGameSkeleton::NormalForm(ActionShape shape) {
  std::vector<double> transitions(shape.num_joint(), 1.0);
  return Create(std::move(shape), 1, 1, std::move(transitions), {1.0});
}

MarkovPolicy MarkovPolicy::Create(int horizon, int num_states,
                                  std::vector<JointMixedStrategy> stages,
                                  bool product) {
  if (horizon < 1 || num_states < 1) {
    throw Error(ErrorCode::kShape, "policy needs H >= 1 and |S| >= 1");
  }
  if (stages.size() != static_cast<std::size_t>(horizon) * num_states) {
    throw Error(ErrorCode::kShape,
                "policy needs one stage distribution per (h, s)");
  }
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (!(stages[k].shape() == stages.front().shape())) {
      throw Error(ErrorCode::kShape, "policy stages have differing shapes");
    }
    if (product && !stages[k].IsProduct()) {
      throw Error(ErrorCode::kInvalidInput,
                  "stage [" + std::to_string(k / num_states) + "][" +
                      std::to_string(k % num_states) +
                      "] is not a product distribution");
    }
  }
  return MarkovPolicy(horizon, num_states, std::move(stages), product);
}

MarkovPolicy MarkovPolicy::Constant(int horizon, int num_states,
                                    const JointMixedStrategy& sigma) {
  std::vector<JointMixedStrategy> stages(
      static_cast<std::size_t>(horizon) * num_states, sigma);
  return Create(horizon, num_states, std::move(stages), sigma.IsProduct());
}

MarkovPolicy MarkovPolicy::FromStrategy(const JointMixedStrategy& sigma) {
  return Constant(1, 1, sigma);
}

void MarkovPolicy::CheckCompatible(const MarkovGameSkeleton& game) const {
  if (horizon_ != game.horizon() || num_states_ != game.num_states() ||
      !(shape() == game.shape())) {
    throw Error(ErrorCode::kShape, "policy is not shaped for this game");
  }
}

ValueTables ValueTables::Zero(int players, int horizon, int states,
                              std::size_t joint) {
  ValueTables t;
  t.players = players;
  t.horizon = horizon;
  t.states = states;
  t.joint = joint;
  t.v.assign(static_cast<std::size_t>(players) * (horizon + 1) * states, 0.0);
  t.q.assign(static_cast<std::size_t>(players) * horizon * states * joint,
             0.0);
  return t;
}

RewardFunction EmbedUtility(const NormalFormGame& game, double bound) {
  RewardTensor r = RewardTensor::Zero(game.shape.num_players(), 1, 1,
                                      game.shape.num_joint());
  r.data = game.utility;
  return RewardFunction::Create(std::move(r), bound);
}

NormalFormGame StageUtility(const RewardTensor& rewards, int h, int s,
                            const ActionShape& shape) {
  if (rewards.joint != shape.num_joint() ||
      rewards.players != shape.num_players()) {
    throw Error(ErrorCode::kShape, "reward tensor does not match shape");
  }
  NormalFormGame game = NormalFormGame::Zero(shape);
  for (int i = 0; i < shape.num_players(); ++i) {
    for (std::size_t a = 0; a < shape.num_joint(); ++a) {
      game.u(i, a) = rewards.at(i, h, s, a);
    }
  }
  return game;
}

}  // namespace strictrd
