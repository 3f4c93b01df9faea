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

#include "job.h"

#include <cmath>
#include <fstream>

#include "strictrd/installability.h"
#include "strictrd/lp.h"
#include "strictrd/reward_design.h"
#include "strictrd/verifier.h"
#include "strictrd/witness.h"

namespace strictrd::cli {
namespace {

// Max-slack designs at or below this margin count as not installable.
constexpr double kMinUsefulSlack = 1e-9;

bool Positive(double x) { return x > 0.0 && std::isfinite(x); }

Json ErrorReport(std::string_view code, const std::string& message) {
  Json e;
  e["code"] = code;
  e["message"] = message;
  return e;
}

struct Inputs {
  GameDocument game;
  MarkovPolicy policy;
};

Inputs LoadInputs(const JobSpec& job) {
  GameDocument game = ParseGame(LoadJsonFile(job.game_path));
  MarkovPolicy policy = ParsePolicy(LoadJsonFile(job.policy_path), game);
  return {std::move(game), std::move(policy)};
}

JobResult RunCheck(const JobSpec& job, Json report) {
  const Inputs in = LoadInputs(job);
  const MarkovInstallabilityReport r =
      CheckMarkov(in.policy, in.game.game, job.solution);
  Json result = InstallabilityToJson(r);
  result["verdict"] = r.installable ? "installable" : "not_installable";
  report["result"] = std::move(result);
  return {std::move(report), r.installable ? kExitPositive : kExitNegative};
}

JobResult RunWitness(const JobSpec& job, Json report) {
  const Inputs in = LoadInputs(job);
  Json result;
  RewardFunction reward;
  try {
    if (job.epsilon > 0.0) {
      EpsilonConfig cfg{job.epsilon, job.bound, job.deviation_class};
      reward = MarkovEpsilonWitness(in.policy, in.game.game, cfg, job.solution);
    } else {
      reward = MarkovWitness(in.policy, in.game.game, job.bound, job.solution);
    }
  } catch (const InfeasibleEpsilonError& e) {
    result["verdict"] = "infeasible_epsilon";
    result["reason"] = e.what();
    result["max_gap"] = e.max_gap();
    report["result"] = std::move(result);
    return {std::move(report), kExitNegative};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotInstallable) throw;
    result["verdict"] = "not_installable";
    result["reason"] = e.what();
    report["result"] = std::move(result);
    return {std::move(report), kExitNegative};
  }
  const GapReport gaps =
      CheckStrict(in.game.game, reward.rewards, in.policy, job.solution,
                  job.deviation_class, job.epsilon);
  result["reward"] = RewardToJson(reward, in.game);
  result["gap_report"] = GapReportToJson(gaps);
  result["verdict"] = gaps.strict ? "strict" : "not_strict";
  report["result"] = std::move(result);
  return {std::move(report), gaps.strict ? kExitPositive : kExitNegative};
}

JobResult RunDesign(const JobSpec& job, Json report) {
  const Inputs in = LoadInputs(job);
  const MarkovGameSkeleton& game = in.game.game;
  CostSpec cost{job.cost, {}};
  if (!job.baseline_path.empty()) {
    cost.baseline = ParseRewardTensor(LoadJsonFile(job.baseline_path), in.game);
  } else if (in.game.normal_form) {
    // The stage program is built without the skeleton, so pass the game's
    // own baseline explicitly.
    cost.baseline = game.baseline();
  }
  DesignConfig cfg;
  cfg.slack = job.slack;
  cfg.bound = job.bound;
  cfg.solution = job.solution;
  cfg.maximize_slack = job.max_gap;

  if (!job.lp_dump_path.empty()) {
    const LinearProgram lp =
        in.game.normal_form
            ? BuildNfgLp(in.policy.stage(0, 0), cost, cfg).lp
            : BuildMgLp(game, in.policy, cost, cfg).lp;
    std::ofstream dump(job.lp_dump_path);
    if (!dump) {
      throw DocumentError(DocumentErrorKind::kIo,
                          "cannot write '" + job.lp_dump_path + "'");
    }
    dump << FormatLp(lp);
  }

  const DesignResult design =
      in.game.normal_form ? DesignNfg(in.policy.stage(0, 0), cost, cfg)
                          : DesignMg(game, in.policy, cost, cfg);
  Json result;
  result["status"] = LpStatusName(design.status);
  result["lp_iterations"] = design.iterations;
  if (!design.feasible()) {
    result["verdict"] = "infeasible";
    result["reason"] = job.max_gap
                           ? "no positive slack is installable within bound B"
                           : "not iota-installable within bound B";
    report["result"] = std::move(result);
    return {std::move(report), kExitNegative};
  }
  const GapReport gaps =
      CheckStrict(game, design.reward.rewards, in.policy, job.solution);
  result["reward"] = RewardToJson(design.reward, in.game);
  result["slack"] = design.slack;
  result["gap_report"] = GapReportToJson(gaps);
  if (job.max_gap) {
    result["objective"] = design.objective;
    const bool ok = design.slack > kMinUsefulSlack;
    result["verdict"] = ok ? "feasible" : "infeasible";
    report["result"] = std::move(result);
    return {std::move(report), ok ? kExitPositive : kExitNegative};
  }
  result["objective"] = design.objective;
  result["cost_recomputed"] =
      EvaluateCost(game, in.policy, design.reward.rewards, cost);
  result["verdict"] = "feasible";
  report["result"] = std::move(result);
  return {std::move(report), kExitPositive};
}

JobResult RunVerify(const JobSpec& job, Json report) {
  const Inputs in = LoadInputs(job);
  const RewardFunction reward =
      ParseReward(LoadJsonFile(job.reward_path), in.game);
  const GapReport gaps =
      CheckStrict(in.game.game, reward.rewards, in.policy, job.solution,
                  job.deviation_class, job.epsilon);
  Json result = GapReportToJson(gaps);
  result["verdict"] = gaps.strict ? "strict" : "not_strict";
  report["result"] = std::move(result);
  return {std::move(report), gaps.strict ? kExitPositive : kExitNegative};
}

}  // namespace

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kCheck:
      return "check";
    case Command::kWitness:
      return "witness";
    case Command::kDesign:
      return "design";
    case Command::kVerify:
      return "verify";
  }
  return "unknown";
}

void ValidateJob(const JobSpec& job) {
  if (job.game_path.empty()) throw UsageError("--game is required");
  if (job.policy_path.empty()) throw UsageError("--policy is required");
  if (job.command == Command::kVerify && job.reward_path.empty()) {
    throw UsageError("verify needs --reward");
  }
  if (job.command == Command::kWitness || job.command == Command::kDesign) {
    if (!Positive(job.bound)) throw UsageError("--bound must be > 0");
  }
  if (job.command == Command::kDesign && !job.max_gap &&
      !Positive(job.slack)) {
    throw UsageError("--slack must be > 0");
  }
  if (!(job.epsilon >= 0.0) || !std::isfinite(job.epsilon)) {
    throw UsageError("--epsilon must be >= 0");
  }
}

Json ResolvedConfig(const JobSpec& job) {
  Json c;
  c["command"] = CommandName(job.command);
  c["game"] = job.game_path;
  c["policy"] = job.policy_path;
  c["concept"] = ConceptName(job.solution);
  switch (job.command) {
    case Command::kCheck:
      break;
    case Command::kWitness:
      c["bound"] = job.bound;
      c["epsilon"] = job.epsilon;
      c["deviation_class"] = DeviationClassName(job.deviation_class);
      break;
    case Command::kDesign:
      c["bound"] = job.bound;
      c["slack"] = job.slack;
      c["cost"] = CostKindName(job.cost);
      c["baseline"] = job.baseline_path;
      c["max_gap"] = job.max_gap;
      c["lp_dump"] = job.lp_dump_path;
      break;
    case Command::kVerify:
      c["reward"] = job.reward_path;
      c["epsilon"] = job.epsilon;
      c["deviation_class"] = DeviationClassName(job.deviation_class);
      break;
  }
  c["out"] = job.out_path;
  return c;
}

JobResult RunJob(const JobSpec& job) {
  Json report;
  report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  report["config"] = ResolvedConfig(job);
  try {
    ValidateJob(job);
    switch (job.command) {
      case Command::kCheck:
        return RunCheck(job, std::move(report));
      case Command::kWitness:
        return RunWitness(job, std::move(report));
      case Command::kDesign:
        return RunDesign(job, std::move(report));
      case Command::kVerify:
        return RunVerify(job, std::move(report));
    }
  } catch (const UsageError& e) {
    report["error"] = ErrorReport("usage", e.what());
  } catch (const DocumentError& e) {
    report["error"] = ErrorReport(DocumentErrorName(e.kind()), e.what());
  } catch (const Error& e) {
    report["error"] = ErrorReport(ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    report["error"] = ErrorReport("internal", e.what());
  }
  return {std::move(report), kExitError};
}

}  // namespace strictrd::cli
