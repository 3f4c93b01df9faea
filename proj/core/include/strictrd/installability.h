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

// Exact tests for whether a target joint strategy (or Markov policy) can be
// made a strict Nash / correlated / coarse-correlated equilibrium by choosing
// rewards alone. All tests look only at the conditionals of the target.

#ifndef STRICTRD_INSTALLABILITY_H_
#define STRICTRD_INSTALLABILITY_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strictrd/concepts.h"
#include "strictrd/game.h"

namespace strictrd {

struct PlayerCertificate {
  enum class Kind {
    kNoUnitMassAction,     // Nash failure: player i mixes
    kCoincidingPair,       // sigma_ij == sigma_ik on supported j, k
    kAllConditionalsEqual, // coarse-correlated failure: |support| >= 2, all equal
    kSingleSupport,        // coarse-correlated success: only one action played
    kDistinguishingPair,   // coarse-correlated success: sigma_ij != sigma_ik
  };
  int player = 0;
  Kind kind = Kind::kSingleSupport;
  int j = -1;
  int k = -1;

  bool operator==(const PlayerCertificate&) const = default;
};

std::string_view CertificateKindName(PlayerCertificate::Kind kind);

struct InstallabilityReport {
  Concept solution = Concept::kCorrelated;
  bool installable = false;
  // Failure: exactly one entry, the first violation in scan order.
  // Success: one entry per player for kCoarseCorrelated, empty otherwise.
  std::vector<PlayerCertificate> certificates;
  std::string note;
};

// Precondition: sigma factorizes over players (kPrecondition otherwise).
InstallabilityReport CheckNash(const JointMixedStrategy& sigma);
// Scans players, then j, then k ascending; reports the first supported pair
// with equal conditionals.
InstallabilityReport CheckCorrelated(const JointMixedStrategy& sigma);
// Linear-time scan: compare every supported conditional against the one of
// the lowest-indexed supported action; a player with a single supported
// action passes.
InstallabilityReport CheckCoarseCorrelated(const JointMixedStrategy& sigma);
InstallabilityReport CheckInstallable(const JointMixedStrategy& sigma,
                                      Concept solution);

// Re-checks a failure certificate against sigma. Used to validate reports.
bool CertificateViolates(const JointMixedStrategy& sigma,
                         const PlayerCertificate& certificate);

struct MarkovInstallabilityReport {
  Concept solution = Concept::kCorrelated;
  bool installable = false;
  int horizon = 0;
  int num_states = 0;
  std::vector<InstallabilityReport> stages;  // [h][s]

  const InstallabilityReport& stage(int h, int s) const {
    return stages[static_cast<std::size_t>(h) * num_states + s];
  }
  // (h, s) pairs whose stage check failed, in ascending order.
  std::vector<std::pair<int, int>> FailingStages() const;
};

// Stage-wise check of pi against game. For kNash the policy must be a
// product policy.
MarkovInstallabilityReport CheckMarkov(const MarkovPolicy& policy,
                                       const MarkovGameSkeleton& game,
                                       Concept solution);

}  // namespace strictrd

#endif  // STRICTRD_INSTALLABILITY_H_
