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

// Batch jobs behind the command-line tool. A job reads its input documents,
// runs one pipeline and produces a report document plus an exit code:
// 0 positive verdict, 1 negative verdict, 2 usage or input error.

#ifndef STRICTRD_TOOLS_JOB_H_
#define STRICTRD_TOOLS_JOB_H_

#include <string>
#include <string_view>

#include "document_io.h"
#include "strictrd/concepts.h"

namespace strictrd::cli {

inline constexpr std::string_view kToolName = "strictrd";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitPositive = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

enum class Command { kCheck, kWitness, kDesign, kVerify };

std::string_view CommandName(Command command);

struct JobSpec {
  Command command = Command::kCheck;
  std::string game_path;
  std::string policy_path;
  std::string reward_path;    // verify
  std::string baseline_path;  // design, optional
  Concept solution = Concept::kCoarseCorrelated;
  CostKind cost = CostKind::kOffline;
  double slack = 0.1;
  double bound = 1.0;
  double epsilon = 0.0;
  DeviationClass deviation_class = DeviationClass::kUnrestricted;
  bool max_gap = false;
  std::string lp_dump_path;
  std::string out_path;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UsageError naming the first missing or out-of-range field.
void ValidateJob(const JobSpec& job);

Json ResolvedConfig(const JobSpec& job);

struct JobResult {
  Json report;
  int exit_code = kExitError;
};

// Never throws; failures become an "error" member with a stable code.
JobResult RunJob(const JobSpec& job);

}  // namespace strictrd::cli

#endif  // STRICTRD_TOOLS_JOB_H_
