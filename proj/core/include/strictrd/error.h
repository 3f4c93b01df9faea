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

#ifndef STRICTRD_ERROR_H_
#define STRICTRD_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace strictrd {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto stable diagnostic names.
enum class ErrorCode {
  kShape,            // index out of range or mismatched tensor shapes
  kInvalidInput,     // NaN, negative probability, distribution not summing to 1
  kDomain,           // argument outside an operation's domain
  kPrecondition,     // e.g. non-product strategy passed to a Nash routine
  kNotInstallable,   // a construction was asked for on a failing stage
  kInfeasibleEpsilon,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an epsilon-strict witness is requested beyond what the reward
// bound can support. `max_gap` is the largest installable gap.
class InfeasibleEpsilonError : public Error {
 public:
  InfeasibleEpsilonError(const std::string& message, double max_gap)
      : Error(ErrorCode::kInfeasibleEpsilon, message), max_gap_(max_gap) {}

  double max_gap() const { return max_gap_; }

 private:
  double max_gap_;
};

}  // namespace strictrd

#endif  // STRICTRD_ERROR_H_
