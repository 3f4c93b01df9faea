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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "job.h"

namespace {

using strictrd::cli::Command;
using strictrd::cli::JobSpec;

void AddCommon(CLI::App* sub, JobSpec& job, std::string& concept_name) {
  sub->add_option("--game", job.game_path, "Game document (JSON)")
      ->required();
  sub->add_option("--policy", job.policy_path, "Target policy document")
      ->required();
  sub->add_option("--concept", concept_name, "Solution concept")
      ->check(CLI::IsMember({"ne", "ce", "cce"}))
      ->capture_default_str();
  sub->add_option("--out", job.out_path, "Write the report here");
}

void AddDeviationClass(CLI::App* sub, JobSpec& job, std::string& class_name) {
  sub->add_option("--epsilon", job.epsilon, "Required margin epsilon >= 0")
      ->capture_default_str();
  sub->add_option("--deviation-class", class_name,
                  "Deviations an epsilon-rational player considers")
      ->check(CLI::IsMember(
          {"never-target", "never-recommended", "unrestricted"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strict equilibrium installability, reward design and "
               "verification for normal-form and finite-horizon Markov games"};
  app.set_version_flag("--version", std::string(strictrd::cli::kToolVersion));
  app.require_subcommand(1);

  JobSpec job;
  std::string concept_name = "cce";
  std::string class_name = "unrestricted";
  std::string cost_name = "offline";

  CLI::App* check = app.add_subcommand("check", "Installability check");
  AddCommon(check, job, concept_name);

  CLI::App* witness =
      app.add_subcommand("witness", "Build and verify a witness reward");
  AddCommon(witness, job, concept_name);
  witness->add_option("--bound", job.bound, "Reward bound B")
      ->capture_default_str();
  AddDeviationClass(witness, job, class_name);

  CLI::App* design =
      app.add_subcommand("design", "Solve the optimal reward design LP");
  AddCommon(design, job, concept_name);
  design->add_option("--slack", job.slack, "Slack iota > 0")
      ->capture_default_str();
  design->add_option("--bound", job.bound, "Reward bound B")
      ->capture_default_str();
  design->add_option("--cost", cost_name, "Cost objective")
      ->check(CLI::IsMember({"online", "offline", "social", "egalitarian"}))
      ->capture_default_str();
  design->add_option("--baseline", job.baseline_path,
                     "Baseline reward document (defaults to the game's)");
  design->add_flag("--max-gap", job.max_gap,
                   "Maximize iota under the bound instead of the cost");
  design->add_option("--lp-dump", job.lp_dump_path,
                     "Write the LP in CPLEX-LP text form");

  CLI::App* verify = app.add_subcommand("verify", "Measure strictness gaps");
  AddCommon(verify, job, concept_name);
  verify->add_option("--reward", job.reward_path, "Reward document")
      ->required();
  AddDeviationClass(verify, job, class_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return strictrd::cli::kExitError;
  }

  if (check->parsed()) job.command = Command::kCheck;
  if (witness->parsed()) job.command = Command::kWitness;
  if (design->parsed()) job.command = Command::kDesign;
  if (verify->parsed()) job.command = Command::kVerify;
  job.solution = strictrd::ParseConcept(concept_name);
  job.deviation_class = strictrd::ParseDeviationClass(class_name);
  job.cost = strictrd::ParseCostKind(cost_name);

  const strictrd::cli::JobResult result = strictrd::cli::RunJob(job);
  const std::string text = result.report.dump(2) + "\n";
  if (result.report.contains("error")) {
    std::cerr << "strictrd: " << result.report["error"]["code"].get<std::string>()
              << ": " << result.report["error"]["message"].get<std::string>()
              << "\n";
  }
  if (job.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(job.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "strictrd: io: cannot write '" << job.out_path << "'\n";
      return strictrd::cli::kExitError;
    }
    out << text;
  }
  return result.exit_code;
}
