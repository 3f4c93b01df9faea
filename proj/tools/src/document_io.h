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

// JSON documents for games, policies, rewards and reports.
//
// game:   {"players": n, "actions": [[names]], "states": count | [names],
//          "horizon": H, "transitions": P[h][s][a][s'],
//          "initial_dist": [..], "baseline_reward"?: r[i][h][s][a]}
// A game without "transitions" is a normal-form shorthand (H = 1, one
// state) and may carry "baseline_utility": u[i][a].
// policy: {"stages": pi[h][s][a], "product": bool} or {"strategy": [..]}.
// reward: {"bound": B, "rewards": r[i][h][s][a]} or {"bound": B,
//          "utility": u[i][a]} for H = 1, one state.
// Joint actions a are row-major over per-player action indices, player 0
// most significant.

#ifndef STRICTRD_TOOLS_DOCUMENT_IO_H_
#define STRICTRD_TOOLS_DOCUMENT_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "strictrd/error.h"
#include "strictrd/game.h"
#include "strictrd/installability.h"
#include "strictrd/verifier.h"

namespace strictrd::cli {

using Json = nlohmann::json;

// Failures before any domain object exists.
enum class DocumentErrorKind { kIo, kParse, kSchema };

class DocumentError : public std::runtime_error {
 public:
  DocumentError(DocumentErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  DocumentErrorKind kind() const { return kind_; }

 private:
  DocumentErrorKind kind_;
};

// "io", "parse", "schema".
std::string_view DocumentErrorName(DocumentErrorKind kind);

struct GameDocument {
  MarkovGameSkeleton game = MarkovGameSkeleton::NormalForm(ActionShape({1}));
  std::vector<std::vector<std::string>> action_names;
  std::vector<std::string> state_names;  // empty when given as a count
  bool normal_form = false;
};

Json LoadJsonFile(const std::string& path);

GameDocument ParseGame(const Json& doc);
MarkovPolicy ParsePolicy(const Json& doc, const GameDocument& game);
RewardFunction ParseReward(const Json& doc, const GameDocument& game);
// Reward tensor without a bound (for baselines); "bound" is ignored.
RewardTensor ParseRewardTensor(const Json& doc, const GameDocument& game);

Json GameToJson(const GameDocument& game);
Json PolicyToJson(const MarkovPolicy& policy, const GameDocument& game);
Json RewardToJson(const RewardFunction& reward, const GameDocument& game);
Json GapReportToJson(const GapReport& report);
Json InstallabilityToJson(const MarkovInstallabilityReport& report);

}  // namespace strictrd::cli

#endif  // STRICTRD_TOOLS_DOCUMENT_IO_H_
