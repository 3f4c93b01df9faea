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

// Domain types shared by every other part of the library: joint action
// spaces, joint mixed strategies and their per-player conditionals, Markov
// game skeletons, Markovian joint policies, reward tensors and value tables.
//
// Conventions:
//  * players, actions, stages and states are 0-based;
//  * a joint action is encoded row-major over per-player action indices,
//    player 0 being the most significant digit;
//  * an opponent profile a_{-i} is encoded the same way over the remaining
//    players, in ascending player order.

#ifndef STRICTRD_GAME_H_
#define STRICTRD_GAME_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace strictrd {

// Distributions must sum to 1 within this budget at ingestion.
inline constexpr double kProbabilityTolerance = 1e-9;
// Entries in [-kNegativeClamp, 0) are clamped to 0; anything lower is
// rejected.
inline constexpr double kNegativeClamp = 1e-12;
// L-infinity tolerance used when comparing two conditionals.
inline constexpr double kConditionalTolerance = 1e-9;

class ActionShape {
 public:
  ActionShape() = default;
  explicit ActionShape(std::vector<int> sizes);

  int num_players() const { return static_cast<int>(sizes_.size()); }
  int num_actions(int player) const;
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t num_joint() const { return num_joint_; }
  // |A_{-i}|.
  std::size_t num_opponent_joint(int player) const;

  int ActionOf(std::size_t joint, int player) const {
    return static_cast<int>((joint / strides_[player]) % sizes_[player]);
  }
  // Index of a_{-i} among opponent profiles.
  std::size_t OpponentIndex(std::size_t joint, int player) const {
    const std::size_t stride = strides_[player];
    return (joint / (stride * sizes_[player])) * stride + joint % stride;
  }
  // Joint index of (j, a_{-i}).
  std::size_t JointIndex(int player, int action,
                         std::size_t opponent) const {
    const std::size_t stride = strides_[player];
    return (opponent / stride) * stride * sizes_[player] +
           static_cast<std::size_t>(action) * stride + opponent % stride;
  }
  // Joint index of (m, a_{-i}) where a_{-i} is taken from `joint`.
  std::size_t Deviate(std::size_t joint, int player, int action) const {
    const std::size_t stride = strides_[player];
    const auto current = static_cast<std::size_t>(ActionOf(joint, player));
    return joint - current * stride + static_cast<std::size_t>(action) * stride;
  }

  std::vector<int> Decode(std::size_t joint) const;
  std::size_t Encode(std::span<const int> actions) const;

  void CheckPlayer(int player) const;
  void CheckAction(int player, int action) const;

  bool operator==(const ActionShape& other) const {
    return sizes_ == other.sizes_;
  }

 private:
  std::vector<int> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t num_joint_ = 1;
};

// Validates a probability vector: rejects non-finite values and entries below
// -kNegativeClamp, clamps tiny negatives to 0, requires the sum to be within
// kProbabilityTolerance of 1 and renormalizes. `what` names the offending
// object in the error message.
std::vector<double> NormalizeDistribution(std::vector<double> values,
                                          std::string_view what);

// A distribution over joint actions (the target sigma, or one stage of a
// Markov policy). Immutable once built.
class JointMixedStrategy {
 public:
  static JointMixedStrategy Create(ActionShape shape,
                                   std::vector<double> probs);
  static JointMixedStrategy PointMass(ActionShape shape,
                                      std::span<const int> actions);
  static JointMixedStrategy Uniform(ActionShape shape);
  // Outer product of per-player marginals.
  static JointMixedStrategy Product(
      const std::vector<std::vector<double>>& marginals);

  const ActionShape& shape() const { return shape_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t joint) const { return probs_[joint]; }

  // p_{ij} for every j.
  std::vector<double> Marginal(int player) const;
  // Distribution of a_{-i}, indexed by opponent profile.
  std::vector<double> OpponentMarginal(int player) const;
  // True when the tensor equals the outer product of its player marginals.
  bool IsProduct(double tolerance = kProbabilityTolerance) const;

 private:
  JointMixedStrategy(ActionShape shape, std::vector<double> probs)
      : shape_(std::move(shape)), probs_(std::move(probs)) {}

  ActionShape shape_;
  std::vector<double> probs_;
};

// sigma_{ij}: the distribution over A_{-i} given that player i is told j.
// Zero-mass actions carry the all-zero vector.
struct Conditional {
  int player = 0;
  int action = 0;
  double mass = 0.0;
  std::vector<double> dist;
};

// All conditionals of one player, built in a single pass over sigma.
struct PlayerConditionals {
  int player = 0;
  std::size_t opponent_count = 0;
  std::vector<double> mass;  // p_{ij}
  std::vector<double> dist;  // row j holds sigma_{ij}

  int num_actions() const { return static_cast<int>(mass.size()); }
  std::span<const double> row(int action) const {
    return {dist.data() + static_cast<std::size_t>(action) * opponent_count,
            opponent_count};
  }
  bool supported(int action) const { return mass[action] > 0.0; }
};

Conditional ConditionalOf(const JointMixedStrategy& sigma, int player,
                          int action);
PlayerConditionals ConditionalsOf(const JointMixedStrategy& sigma,
                                  int player);

// Actions j with p_{ij} > 0 (exact comparison on stored values).
std::vector<int> Support(const JointMixedStrategy& sigma, int player);

// ||c1||_2 (1 - cos theta), theta the angle between c1 and c2. An all-zero
// c2 is treated as orthogonal. Throws kDomain when c1 is all zero.
double CosineGap(std::span<const double> c1, std::span<const double> c2);
double CosineGap(const Conditional& c1, const Conditional& c2);

// L-infinity comparison at kConditionalTolerance.
bool SameConditional(std::span<const double> a, std::span<const double> b,
                     double tolerance = kConditionalTolerance);

double L2Norm(std::span<const double> v);

// A normal-form game (A, u). utility is laid out [player][joint action].
struct NormalFormGame {
  ActionShape shape;
  std::vector<double> utility;

  static NormalFormGame Create(ActionShape shape, std::vector<double> utility);
  static NormalFormGame Zero(ActionShape shape);

  double u(int player, std::size_t joint) const {
    return utility[static_cast<std::size_t>(player) * shape.num_joint() +
                   joint];
  }
  double& u(int player, std::size_t joint) {
    return utility[static_cast<std::size_t>(player) * shape.num_joint() +
                   joint];
  }
};

// r_{i,h}(s,a) laid out [player][stage][state][joint action].
struct RewardTensor {
  int players = 0;
  int horizon = 0;
  int states = 0;
  std::size_t joint = 0;
  std::vector<double> data;

  static RewardTensor Zero(int players, int horizon, int states,
                           std::size_t joint);

  std::size_t Index(int i, int h, int s, std::size_t a) const {
    return ((static_cast<std::size_t>(i) * horizon + h) * states + s) * joint +
           a;
  }
  double at(int i, int h, int s, std::size_t a) const {
    return data[Index(i, h, s, a)];
  }
  double& at(int i, int h, int s, std::size_t a) {
    return data[Index(i, h, s, a)];
  }
  bool SameShape(const RewardTensor& other) const {
    return players == other.players && horizon == other.horizon &&
           states == other.states && joint == other.joint;
  }
};

// A bounded reward function: every entry in [-bound, bound].
struct RewardFunction {
  RewardTensor rewards;
  double bound = 1.0;

  static RewardFunction Create(RewardTensor rewards, double bound);
  double MaxAbs() const;
};

// Finite-horizon Markov game without rewards (plus an optional baseline).
class MarkovGameSkeleton {
 public:
  // transitions laid out [stage][state][joint action][next state].
  static MarkovGameSkeleton Create(ActionShape shape, int num_states,
                                   int horizon,
                                   std::vector<double> transitions,
                                   std::vector<double> initial_dist,
                                   std::optional<RewardTensor> baseline = {});
  // H = 1, |S| = 1 embedding of a normal-form skeleton.
  static MarkovGameSkeleton NormalForm(ActionShape shape);

  const ActionShape& shape() const { return shape_; }
  int num_players() const { return shape_.num_players(); }
  int num_states() const { return num_states_; }
  int horizon() const { return horizon_; }
  std::size_t num_joint() const { return shape_.num_joint(); }
  std::span<const double> initial_dist() const { return initial_dist_; }
  const std::optional<RewardTensor>& baseline() const { return baseline_; }
  std::span<const double> transitions() const { return transitions_; }

  std::span<const double> NextStateDist(int h, int s, std::size_t a) const {
    const std::size_t offset =
        ((static_cast<std::size_t>(h) * num_states_ + s) * num_joint() + a) *
        num_states_;
    return {transitions_.data() + offset, static_cast<std::size_t>(num_states_)};
  }

  RewardTensor ZeroRewards() const {
    return RewardTensor::Zero(num_players(), horizon_, num_states_,
                              num_joint());
  }

 private:
  MarkovGameSkeleton() = default;

  ActionShape shape_;
  int num_states_ = 1;
  int horizon_ = 1;
  std::vector<double> transitions_;
  std::vector<double> initial_dist_;
  std::optional<RewardTensor> baseline_;
};

// Markovian joint policy pi_h(s), one joint distribution per (h, s).
class MarkovPolicy {
 public:
  // stages laid out [stage][state]. When `product` is set every stage must
  // factorize over players.
  static MarkovPolicy Create(int horizon, int num_states,
                             std::vector<JointMixedStrategy> stages,
                             bool product);
  // Repeats `sigma` at every (h, s).
  static MarkovPolicy Constant(int horizon, int num_states,
                               const JointMixedStrategy& sigma);
  // H = 1, |S| = 1 embedding.
  static MarkovPolicy FromStrategy(const JointMixedStrategy& sigma);

  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  bool product() const { return product_; }
  const ActionShape& shape() const { return stages_.front().shape(); }
  const JointMixedStrategy& stage(int h, int s) const {
    return stages_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  const std::vector<JointMixedStrategy>& stages() const { return stages_; }

  // Throws kShape unless the policy is laid out for `game`.
  void CheckCompatible(const MarkovGameSkeleton& game) const;

 private:
  MarkovPolicy(int horizon, int num_states,
               std::vector<JointMixedStrategy> stages, bool product)
      : horizon_(horizon),
        num_states_(num_states),
        product_(product),
        stages_(std::move(stages)) {}

  int horizon_;
  int num_states_;
  bool product_;
  std::vector<JointMixedStrategy> stages_;
};

// V_{i,h}(s) for h in [0, H] (layer H is terminal) and Q_{i,h}(s, a).
struct ValueTables {
  int players = 0;
  int horizon = 0;
  int states = 0;
  std::size_t joint = 0;
  std::vector<double> v;
  std::vector<double> q;

  static ValueTables Zero(int players, int horizon, int states,
                          std::size_t joint);

  double V(int i, int h, int s) const {
    return v[(static_cast<std::size_t>(i) * (horizon + 1) + h) * states + s];
  }
  double& V(int i, int h, int s) {
    return v[(static_cast<std::size_t>(i) * (horizon + 1) + h) * states + s];
  }
  double Q(int i, int h, int s, std::size_t a) const {
    return q[((static_cast<std::size_t>(i) * horizon + h) * states + s) *
                 joint +
             a];
  }
  double& Q(int i, int h, int s, std::size_t a) {
    return q[((static_cast<std::size_t>(i) * horizon + h) * states + s) *
                 joint +
             a];
  }
};

// Utility tensor of a normal-form game as an H = 1, |S| = 1 reward function.
RewardFunction EmbedUtility(const NormalFormGame& game, double bound);
// Inverse of EmbedUtility for H = 1, |S| = 1 rewards.
NormalFormGame StageUtility(const RewardTensor& rewards, int h, int s,
                            const ActionShape& shape);

}  // namespace strictrd

#endif  // STRICTRD_GAME_H_
