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

// Small enumerations shared across modules: solution concepts, deviation
// classes for epsilon-strict play, and reward-design cost objectives.

#ifndef STRICTRD_CONCEPTS_H_
#define STRICTRD_CONCEPTS_H_

#include <optional>
#include <span>
#include <string_view>

#include "strictrd/game.h"

namespace strictrd {

enum class Concept { kNash, kCorrelated, kCoarseCorrelated };

std::string_view ConceptName(Concept solution);  // "ne", "ce", "cce"
Concept ParseConcept(std::string_view name);

// Which deviations an epsilon-rational player may consider.
enum class DeviationClass {
  kNeverTarget,       // never places mass on the target action a*
  kNeverRecommended,  // never plays the recommended action
  kUnrestricted,
};

std::string_view DeviationClassName(DeviationClass deviation_class);
DeviationClass ParseDeviationClass(std::string_view name);

enum class CostKind { kOnline, kOffline, kSocialWelfare, kEgalitarian };

std::string_view CostKindName(CostKind kind);
CostKind ParseCostKind(std::string_view name);

// Objective of a reward design. ONLINE and OFFLINE measure distance to a
// baseline reward; when `baseline` is empty the game's own baseline is used.
struct CostSpec {
  CostKind kind = CostKind::kOffline;
  std::optional<RewardTensor> baseline;
};

bool NeedsBaseline(CostKind kind);
// Throws kInvalidInput if a baseline is needed and neither source has one,
// kShape if it does not match the game.
const RewardTensor& ResolveBaseline(const CostSpec& cost,
                                    const MarkovGameSkeleton& game);

// The unique supported action when `mass` is a point mass, else -1. A
// deviation to that action reproduces the target and is never counted.
int PointMassAction(std::span<const double> mass);

}  // namespace strictrd

#endif  // STRICTRD_CONCEPTS_H_
