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

#include "document_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace strictrd::cli {
namespace {

[[noreturn]] void SchemaError(const std::string& path,
                              const std::string& message) {
  throw DocumentError(DocumentErrorKind::kSchema, path + ": " + message);
}

const Json& Field(const Json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaError(path, "missing field '" + key + "'");
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) SchemaError(path, "expected a number");
  return j.get<double>();
}

int Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::string Index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

// Reads a nested array of numbers with the given dimensions, row-major.
void ReadNested(const Json& j, const std::vector<std::size_t>& dims,
                std::size_t level, const std::string& path,
                std::vector<double>& out) {
  if (!j.is_array()) SchemaError(path, "expected an array");
  if (j.size() != dims[level]) {
    SchemaError(path, "expected " + std::to_string(dims[level]) +
                          " entries, found " + std::to_string(j.size()));
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (level + 1 == dims.size()) {
      out.push_back(Number(j[k], Index(path, k)));
    } else {
      ReadNested(j[k], dims, level + 1, Index(path, k), out);
    }
  }
}

std::vector<double> ReadTensor(const Json& j,
                               const std::vector<std::size_t>& dims,
                               const std::string& path) {
  std::vector<double> out;
  ReadNested(j, dims, 0, path, out);
  return out;
}

// Inverse of ReadTensor.
Json WriteTensor(const std::vector<double>& data,
                 const std::vector<std::size_t>& dims, std::size_t level,
                 std::size_t& pos) {
  Json out = Json::array();
  for (std::size_t k = 0; k < dims[level]; ++k) {
    if (level + 1 == dims.size()) {
      out.push_back(data[pos++]);
    } else {
      out.push_back(WriteTensor(data, dims, level + 1, pos));
    }
  }
  return out;
}

Json WriteTensor(const std::vector<double>& data,
                 const std::vector<std::size_t>& dims) {
  std::size_t pos = 0;
  return WriteTensor(data, dims, 0, pos);
}

std::vector<std::size_t> RewardDims(const MarkovGameSkeleton& g) {
  return {static_cast<std::size_t>(g.num_players()),
          static_cast<std::size_t>(g.horizon()),
          static_cast<std::size_t>(g.num_states()), g.num_joint()};
}

Json NumberOrNull(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

std::string_view DocumentErrorName(DocumentErrorKind kind) {
  switch (kind) {
    case DocumentErrorKind::kIo:
      return "io";
    case DocumentErrorKind::kParse:
      return "parse";
    case DocumentErrorKind::kSchema:
      return "schema";
  }
  return "unknown";
}

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DocumentError(DocumentErrorKind::kIo, "cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw DocumentError(DocumentErrorKind::kParse,
                        path + ": " + std::string(e.what()));
  }
}

GameDocument ParseGame(const Json& doc) {
  if (!doc.is_object()) SchemaError("game", "expected an object");
  GameDocument out;
  const Json& actions = Field(doc, "actions", "game");
  if (!actions.is_array() || actions.empty()) {
    SchemaError("game.actions", "expected a non-empty array");
  }
  std::vector<int> sizes;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string path = Index("game.actions", i);
    std::vector<std::string> names;
    if (actions[i].is_number_integer()) {
      const int count = actions[i].get<int>();
      if (count < 1) SchemaError(path, "action count must be >= 1");
      for (int k = 0; k < count; ++k) names.push_back(std::to_string(k));
    } else if (actions[i].is_array() && !actions[i].empty()) {
      for (std::size_t k = 0; k < actions[i].size(); ++k) {
        if (!actions[i][k].is_string()) {
          SchemaError(Index(path, k), "expected an action name");
        }
        names.push_back(actions[i][k].get<std::string>());
      }
    } else {
      SchemaError(path, "expected a list of action names or a count");
    }
    sizes.push_back(static_cast<int>(names.size()));
    out.action_names.push_back(std::move(names));
  }
  if (doc.contains("players") &&
      Integer(doc["players"], "game.players") !=
          static_cast<int>(sizes.size())) {
    SchemaError("game.players", "does not match the number of action lists");
  }
  ActionShape shape(sizes);
  const std::size_t n = sizes.size();
  const std::size_t joint = shape.num_joint();

  if (!doc.contains("transitions")) {
    out.normal_form = true;
    std::optional<RewardTensor> baseline;
    if (doc.contains("baseline_utility")) {
      RewardTensor r = RewardTensor::Zero(static_cast<int>(n), 1, 1, joint);
      r.data = ReadTensor(doc["baseline_utility"], {n, joint},
                          "game.baseline_utility");
      baseline = std::move(r);
    }
    out.game = MarkovGameSkeleton::Create(
        shape, 1, 1, std::vector<double>(joint, 1.0), {1.0},
        std::move(baseline));
    return out;
  }

  const Json& states = Field(doc, "states", "game");
  int num_states = 0;
  if (states.is_number_integer()) {
    num_states = states.get<int>();
  } else if (states.is_array()) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (!states[k].is_string()) {
        SchemaError(Index("game.states", k), "expected a state name");
      }
      out.state_names.push_back(states[k].get<std::string>());
    }
    num_states = static_cast<int>(states.size());
  } else {
    SchemaError("game.states", "expected a count or a list of names");
  }
  if (num_states < 1) SchemaError("game.states", "need at least one state");
  const int horizon = Integer(Field(doc, "horizon", "game"), "game.horizon");
  if (horizon < 1) SchemaError("game.horizon", "must be >= 1");
  const std::size_t S = static_cast<std::size_t>(num_states);
  const std::size_t H = static_cast<std::size_t>(horizon);
  std::vector<double> transitions = ReadTensor(
      doc["transitions"], {H, S, joint, S}, "game.transitions");
  std::vector<double> initial =
      ReadTensor(Field(doc, "initial_dist", "game"), {S}, "game.initial_dist");
  std::optional<RewardTensor> baseline;
  if (doc.contains("baseline_reward")) {
    RewardTensor r =
        RewardTensor::Zero(static_cast<int>(n), horizon, num_states, joint);
    r.data = ReadTensor(doc["baseline_reward"], {n, H, S, joint},
                        "game.baseline_reward");
    baseline = std::move(r);
  }
  try {
    out.game = MarkovGameSkeleton::Create(shape, num_states, horizon,
                                          std::move(transitions),
                                          std::move(initial),
                                          std::move(baseline));
  } catch (const Error& e) {
    throw Error(e.code(), "game." + std::string(e.what()));
  }
  return out;
}

MarkovPolicy ParsePolicy(const Json& doc, const GameDocument& game) {
  if (!doc.is_object()) SchemaError("policy", "expected an object");
  const MarkovGameSkeleton& g = game.game;
  const ActionShape& shape = g.shape();
  const std::size_t H = g.horizon();
  const std::size_t S = g.num_states();
  const std::size_t joint = g.num_joint();
  std::vector<JointMixedStrategy> stages;
  bool product = false;
  if (doc.contains("product")) {
    if (!doc["product"].is_boolean()) {
      SchemaError("policy.product", "expected a boolean");
    }
    product = doc["product"].get<bool>();
  }
  if (doc.contains("strategy")) {
    std::vector<double> probs =
        ReadTensor(doc["strategy"], {joint}, "policy.strategy");
    probs = NormalizeDistribution(std::move(probs), "policy.strategy");
    const JointMixedStrategy sigma =
        JointMixedStrategy::Create(shape, std::move(probs));
    stages.assign(H * S, sigma);
  } else {
    const std::vector<double> all =
        ReadTensor(Field(doc, "stages", "policy"), {H, S, joint},
                   "policy.stages");
    for (std::size_t h = 0; h < H; ++h) {
      for (std::size_t s = 0; s < S; ++s) {
        const std::size_t offset = (h * S + s) * joint;
        std::vector<double> probs(all.begin() + offset,
                                  all.begin() + offset + joint);
        probs = NormalizeDistribution(
            std::move(probs), "policy.stages[" + std::to_string(h) + "][" +
                                  std::to_string(s) + "]");
        stages.push_back(JointMixedStrategy::Create(shape, std::move(probs)));
      }
    }
  }
  try {
    return MarkovPolicy::Create(static_cast<int>(H), static_cast<int>(S),
                                std::move(stages), product);
  } catch (const Error& e) {
    throw Error(e.code(), "policy." + std::string(e.what()));
  }
}

RewardTensor ParseRewardTensor(const Json& doc, const GameDocument& game) {
  if (!doc.is_object()) SchemaError("reward", "expected an object");
  const MarkovGameSkeleton& g = game.game;
  RewardTensor r = g.ZeroRewards();
  if (doc.contains("utility")) {
    if (g.horizon() != 1 || g.num_states() != 1) {
      SchemaError("reward.utility", "only valid for normal-form games");
    }
    r.data = ReadTensor(doc["utility"],
                        {static_cast<std::size_t>(g.num_players()),
                         g.num_joint()},
                        "reward.utility");
  } else {
    r.data = ReadTensor(Field(doc, "rewards", "reward"), RewardDims(g),
                        "reward.rewards");
  }
  return r;
}

RewardFunction ParseReward(const Json& doc, const GameDocument& game) {
  RewardTensor r = ParseRewardTensor(doc, game);
  const double bound = Number(Field(doc, "bound", "reward"), "reward.bound");
  try {
    return RewardFunction::Create(std::move(r), bound);
  } catch (const Error& e) {
    throw Error(e.code(), "reward: " + std::string(e.what()));
  }
}

Json GameToJson(const GameDocument& game) {
  const MarkovGameSkeleton& g = game.game;
  Json out;
  out["players"] = g.num_players();
  out["actions"] = game.action_names;
  const std::size_t n = g.num_players();
  if (game.normal_form) {
    if (g.baseline()) {
      out["baseline_utility"] =
          WriteTensor(g.baseline()->data, {n, g.num_joint()});
    }
    return out;
  }
  if (game.state_names.empty()) {
    out["states"] = g.num_states();
  } else {
    out["states"] = game.state_names;
  }
  const std::size_t H = g.horizon();
  const std::size_t S = g.num_states();
  out["horizon"] = g.horizon();
  out["transitions"] = WriteTensor(
      std::vector<double>(g.transitions().begin(), g.transitions().end()),
      {H, S, g.num_joint(), S});
  out["initial_dist"] =
      std::vector<double>(g.initial_dist().begin(), g.initial_dist().end());
  if (g.baseline()) {
    out["baseline_reward"] = WriteTensor(g.baseline()->data, RewardDims(g));
  }
  return out;
}

Json PolicyToJson(const MarkovPolicy& policy, const GameDocument& game) {
  const MarkovGameSkeleton& g = game.game;
  std::vector<double> all;
  for (const JointMixedStrategy& stage : policy.stages()) {
    all.insert(all.end(), stage.probs().begin(), stage.probs().end());
  }
  Json out;
  out["stages"] = WriteTensor(all, {static_cast<std::size_t>(g.horizon()),
                                    static_cast<std::size_t>(g.num_states()),
                                    g.num_joint()});
  out["product"] = policy.product();
  return out;
}

Json RewardToJson(const RewardFunction& reward, const GameDocument& game) {
  Json out;
  out["bound"] = reward.bound;
  out["rewards"] = WriteTensor(reward.rewards.data, RewardDims(game.game));
  return out;
}

Json GapReportToJson(const GapReport& report) {
  auto entry = [](const GapEntry& e) {
    Json j;
    j["player"] = e.player;
    j["stage"] = e.stage;
    j["state"] = e.state;
    j["recommended"] =
        e.recommended >= 0 ? Json(e.recommended) : Json(nullptr);
    j["deviation"] = e.deviation;
    j["gap"] = e.gap;
    return j;
  };
  Json out;
  out["concept"] = ConceptName(report.solution);
  out["deviation_class"] = DeviationClassName(report.deviation_class);
  out["epsilon"] = report.epsilon;
  out["min_gap"] = NumberOrNull(report.min_gap);
  out["argmin"] = report.entries.empty() ? Json(nullptr) : entry(report.argmin);
  out["near_identity_deviations"] = report.near_identity_deviations;
  out["strict"] = report.strict;
  Json table = Json::array();
  for (const GapEntry& e : report.entries) table.push_back(entry(e));
  out["per_constraint"] = std::move(table);
  return out;
}

Json InstallabilityToJson(const MarkovInstallabilityReport& report) {
  Json out;
  out["concept"] = ConceptName(report.solution);
  out["installable"] = report.installable;
  out["horizon"] = report.horizon;
  out["num_states"] = report.num_states;
  Json failing = Json::array();
  for (const auto& [h, s] : report.FailingStages()) {
    failing.push_back({h, s});
  }
  out["failing_stages"] = std::move(failing);
  Json stages = Json::array();
  for (int h = 0; h < report.horizon; ++h) {
    for (int s = 0; s < report.num_states; ++s) {
      const InstallabilityReport& r = report.stage(h, s);
      Json stage;
      stage["stage"] = h;
      stage["state"] = s;
      stage["installable"] = r.installable;
      stage["note"] = r.note;
      Json certs = Json::array();
      for (const PlayerCertificate& c : r.certificates) {
        Json cj;
        cj["player"] = c.player;
        cj["kind"] = CertificateKindName(c.kind);
        cj["j"] = c.j >= 0 ? Json(c.j) : Json(nullptr);
        cj["k"] = c.k >= 0 ? Json(c.k) : Json(nullptr);
        certs.push_back(std::move(cj));
      }
      stage["certificates"] = std::move(certs);
      stages.push_back(std::move(stage));
    }
  }
  out["stages"] = std::move(stages);
  return out;
}

}  // namespace strictrd::cli
