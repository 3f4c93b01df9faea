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

#include "strictrd/concepts.h"

#include <string>

#include "strictrd/error.h"

namespace strictrd {

std::string_view ConceptName(Concept solution) {
  switch (solution) {
    case Concept::kNash:
      return "ne";
    case Concept::kCorrelated:
      return "ce";
    case Concept::kCoarseCorrelated:
      return "cce";
  }
  return "unknown";
}

Concept ParseConcept(std::string_view name) {
  if (name == "ne" || name == "sne" || name == "nash") return Concept::kNash;
  if (name == "ce" || name == "sce") return Concept::kCorrelated;
  if (name == "cce" || name == "scce") return Concept::kCoarseCorrelated;
  throw Error(ErrorCode::kInvalidInput,
              "unknown solution concept '" + std::string(name) + "'");
}

std::string_view DeviationClassName(DeviationClass deviation_class) {
  switch (deviation_class) {
    case DeviationClass::kNeverTarget:
      return "never-target";
    case DeviationClass::kNeverRecommended:
      return "never-recommended";
    case DeviationClass::kUnrestricted:
      return "unrestricted";
  }
  return "unknown";
}

DeviationClass ParseDeviationClass(std::string_view name) {
  if (name == "never-target") return DeviationClass::kNeverTarget;
  if (name == "never-recommended") return DeviationClass::kNeverRecommended;
  if (name == "unrestricted") return DeviationClass::kUnrestricted;
  throw Error(ErrorCode::kInvalidInput,
              "unknown deviation class '" + std::string(name) + "'");
}

std::string_view CostKindName(CostKind kind) {
  switch (kind) {
    case CostKind::kOnline:
      return "online";
    case CostKind::kOffline:
      return "offline";
    case CostKind::kSocialWelfare:
      return "social";
    case CostKind::kEgalitarian:
      return "egalitarian";
  }
  return "unknown";
}

CostKind ParseCostKind(std::string_view name) {
  if (name == "online") return CostKind::kOnline;
  if (name == "offline") return CostKind::kOffline;
  if (name == "social") return CostKind::kSocialWelfare;
  if (name == "egalitarian") return CostKind::kEgalitarian;
  throw Error(ErrorCode::kInvalidInput,
              "unknown cost kind '" + std::string(name) + "'");
}

bool NeedsBaseline(CostKind kind) {
  return kind == CostKind::kOnline || kind == CostKind::kOffline;
}

const RewardTensor& ResolveBaseline(const CostSpec& cost,
                                    const MarkovGameSkeleton& game) {
  const RewardTensor* baseline = nullptr;
  if (cost.baseline) {
    baseline = &*cost.baseline;
  } else if (game.baseline()) {
    baseline = &*game.baseline();
  }
  if (baseline == nullptr) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(CostKindName(cost.kind)) +
                    " cost needs a baseline reward");
  }
  if (baseline->players != game.num_players() ||
      baseline->horizon != game.horizon() ||
      baseline->states != game.num_states() ||
      baseline->joint != game.num_joint()) {
    throw Error(ErrorCode::kShape, "baseline reward has wrong shape");
  }
  return *baseline;
}

int PointMassAction(std::span<const double> mass) {
  int action = -1;
  for (int j = 0; j < static_cast<int>(mass.size()); ++j) {
    if (mass[j] <= 0.0) continue;
    if (action >= 0) return -1;
    action = j;
  }
  return action;
}

}  // namespace strictrd
