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

#include "strictrd/error.h"

namespace strictrd {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShape:
      return "shape";
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kNotInstallable:
      return "not_installable";
    case ErrorCode::kInfeasibleEpsilon:
      return "infeasible_epsilon";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace strictrd
