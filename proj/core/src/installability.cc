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

#include "strictrd/installability.h"

#include <string>

#include "strictrd/error.h"

namespace strictrd {

std::string_view CertificateKindName(PlayerCertificate::Kind kind) {
  using Kind = PlayerCertificate::Kind;
  switch (kind) {
    case Kind::kNoUnitMassAction:
      return "no_unit_mass_action";
    case Kind::kCoincidingPair:
      return "coinciding_pair";
    case Kind::kAllConditionalsEqual:
      return "all_conditionals_equal";
    case Kind::kSingleSupport:
      return "single_support";
    case Kind::kDistinguishingPair:
      return "distinguishing_pair";
  }
  return "unknown";
}

namespace {

using Kind = PlayerCertificate::Kind;

int SupportSize(const std::vector<double>& mass) {
  int count = 0;
  for (double p : mass) count += p > 0.0 ? 1 : 0;
  return count;
}

}  // namespace

InstallabilityReport CheckNash(const JointMixedStrategy& sigma) {
  if (!sigma.IsProduct()) {
    throw Error(ErrorCode::kPrecondition,
                "Nash installability is defined for product strategies only");
  }
  InstallabilityReport report;
  report.solution = Concept::kNash;
  report.installable = true;
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    if (SupportSize(sigma.Marginal(i)) != 1) {
      report.installable = false;
      report.certificates.push_back({i, Kind::kNoUnitMassAction, -1, -1});
      report.note = "player " + std::to_string(i) + " has no unit-mass action";
      return report;
    }
  }
  return report;
}

InstallabilityReport CheckCorrelated(const JointMixedStrategy& sigma) {
  InstallabilityReport report;
  report.solution = Concept::kCorrelated;
  report.installable = true;
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    const PlayerConditionals conds = ConditionalsOf(sigma, i);
    for (int j = 0; j < conds.num_actions(); ++j) {
      if (!conds.supported(j)) continue;
      for (int k = 0; k < conds.num_actions(); ++k) {
        if (k == j || !conds.supported(k)) continue;
        if (SameConditional(conds.row(j), conds.row(k))) {
          report.installable = false;
          report.certificates.push_back({i, Kind::kCoincidingPair, j, k});
          report.note = "player " + std::to_string(i) + ": conditionals of " +
                        std::to_string(j) + " and " + std::to_string(k) +
                        " coincide";
          return report;
        }
      }
    }
  }
  return report;
}

InstallabilityReport CheckCoarseCorrelated(const JointMixedStrategy& sigma) {
  InstallabilityReport report;
  report.solution = Concept::kCoarseCorrelated;
  report.installable = true;
  std::vector<PlayerCertificate> passes;
  for (int i = 0; i < sigma.shape().num_players(); ++i) {
    const PlayerConditionals conds = ConditionalsOf(sigma, i);
    int anchor = -1;
    int second = -1;
    int differ = -1;
    int supported = 0;
    for (int j = 0; j < conds.num_actions(); ++j) {
      if (!conds.supported(j)) continue;
      ++supported;
      if (anchor < 0) {
        anchor = j;
        continue;
      }
      if (second < 0) second = j;
      if (differ < 0 && !SameConditional(conds.row(j), conds.row(anchor))) {
        differ = j;
      }
    }
    if (differ >= 0) {
      passes.push_back({i, Kind::kDistinguishingPair, anchor, differ});
    } else if (supported == 1) {
      passes.push_back({i, Kind::kSingleSupport, anchor, -1});
    } else {
      report.installable = false;
      report.certificates = {{i, Kind::kAllConditionalsEqual, anchor, second}};
      report.note = "not installable per necessity argument: player " +
                    std::to_string(i) +
                    " has several supported actions, all with equal "
                    "conditionals";
      return report;
    }
  }
  report.certificates = std::move(passes);
  return report;
}

InstallabilityReport CheckInstallable(const JointMixedStrategy& sigma,
                                      Concept solution) {
  switch (solution) {
    case Concept::kNash:
      return CheckNash(sigma);
    case Concept::kCorrelated:
      return CheckCorrelated(sigma);
    case Concept::kCoarseCorrelated:
      return CheckCoarseCorrelated(sigma);
  }
  throw Error(ErrorCode::kInternal, "unhandled concept");
}

bool CertificateViolates(const JointMixedStrategy& sigma,
                         const PlayerCertificate& certificate) {
  const PlayerConditionals conds = ConditionalsOf(sigma, certificate.player);
  switch (certificate.kind) {
    case Kind::kNoUnitMassAction:
      return SupportSize(conds.mass) > 1;
    case Kind::kCoincidingPair: {
      const int j = certificate.j;
      const int k = certificate.k;
      if (j == k || j < 0 || k < 0 || j >= conds.num_actions() ||
          k >= conds.num_actions()) {
        return false;
      }
      return conds.supported(j) && conds.supported(k) &&
             SameConditional(conds.row(j), conds.row(k));
    }
    case Kind::kAllConditionalsEqual: {
      if (SupportSize(conds.mass) < 2) return false;
      int anchor = -1;
      for (int j = 0; j < conds.num_actions(); ++j) {
        if (!conds.supported(j)) continue;
        if (anchor < 0) {
          anchor = j;
        } else if (!SameConditional(conds.row(j), conds.row(anchor))) {
          return false;
        }
      }
      return true;
    }
    case Kind::kSingleSupport:
    case Kind::kDistinguishingPair:
      return false;
  }
  return false;
}

std::vector<std::pair<int, int>> MarkovInstallabilityReport::FailingStages()
    const {
  std::vector<std::pair<int, int>> failing;
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      if (!stage(h, s).installable) failing.emplace_back(h, s);
    }
  }
  return failing;
}

MarkovInstallabilityReport CheckMarkov(const MarkovPolicy& policy,
                                       const MarkovGameSkeleton& game,
                                       Concept solution) {
  policy.CheckCompatible(game);
  if (solution == Concept::kNash && !policy.product()) {
    throw Error(ErrorCode::kPrecondition,
                "Markov-perfect Nash installability needs a product policy");
  }
  MarkovInstallabilityReport report;
  report.solution = solution;
  report.horizon = policy.horizon();
  report.num_states = policy.num_states();
  report.installable = true;
  report.stages.reserve(policy.stages().size());
  for (const JointMixedStrategy& stage : policy.stages()) {
    report.stages.push_back(CheckInstallable(stage, solution));
    report.installable = report.installable && report.stages.back().installable;
  }
  return report;
}

}  // namespace strictrd
