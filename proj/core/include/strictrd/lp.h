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

// A self-contained dense linear-programming solver: two-phase primal simplex
// over a bounded-variable tableau, with Bland's rule for anti-cycling.
// Intended for the desk-scale programs built by the reward designer.

#ifndef STRICTRD_LP_H_
#define STRICTRD_LP_H_

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strictrd {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;  // repeated variables are summed
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// min c^T x + offset  s.t.  constraints, lower <= x <= upper.
class LinearProgram {
 public:
  int AddVariable(double lower, double upper, double objective = 0.0,
                  std::string name = {});
  int AddConstraint(std::vector<LinearTerm> terms, Relation relation,
                    double rhs, std::string name = {});
  void SetObjectiveCoefficient(int var, double coef) { objective_[var] = coef; }
  void AddObjectiveCoefficient(int var, double coef) { objective_[var] += coef; }
  void set_objective_offset(double offset) { offset_ = offset; }

  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return offset_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }
  std::string_view var_name(int var) const { return names_[var]; }

  // Throws kInvalidInput on NaN/inf coefficients, out-of-range variable
  // indices or lower > upper.
  void Validate() const;

  double Objective(std::span<const double> x) const;
  // Largest violation of any constraint or bound at x.
  double MaxViolation(std::span<const double> x) const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> names_;
  std::vector<LinearConstraint> constraints_;
  double offset_ = 0.0;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> point;  // set when optimal
  double objective_value = 0.0;
  int iterations = 0;
};

enum class PivotRule {
  kBland,
  // Most negative reduced cost; falls back to Bland's rule during runs of
  // degenerate pivots, so termination is kept.
  kDantzig,
};

struct SimplexOptions {
  PivotRule rule = PivotRule::kBland;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  // 0 picks a limit proportional to the tableau size.
  long max_iterations = 0;
};

LpSolution Solve(const LinearProgram& lp, const SimplexOptions& options = {});

// CPLEX-LP style text dump (objective, constraints, bounds) for diffing
// against external solvers.
std::string FormatLp(const LinearProgram& lp);

}  // namespace strictrd

#endif  // STRICTRD_LP_H_
