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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "strictrd/error.h"
#include "strictrd/lp.h"

namespace strictrd {

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

int LinearProgram::AddVariable(double lower, double upper, double objective,
                               std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  objective_.push_back(objective);
  if (name.empty()) name = "x" + std::to_string(objective_.size() - 1);
  names_.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearProgram::AddConstraint(std::vector<LinearTerm> terms,
                                 Relation relation, double rhs,
                                 std::string name) {
  if (name.empty()) name = "c" + std::to_string(constraints_.size());
  constraints_.push_back({std::move(terms), relation, rhs, std::move(name)});
  return num_constraints() - 1;
}

void LinearProgram::Validate() const {
  for (int k = 0; k < num_vars(); ++k) {
    if (!std::isfinite(objective_[k])) {
      throw Error(ErrorCode::kInvalidInput, "non-finite objective coefficient");
    }
    if (std::isnan(lower_[k]) || std::isnan(upper_[k]) ||
        lower_[k] == kLpInfinity || upper_[k] == -kLpInfinity) {
      throw Error(ErrorCode::kInvalidInput, "invalid bound on " + names_[k]);
    }
    if (lower_[k] > upper_[k]) {
      throw Error(ErrorCode::kInvalidInput, "lower > upper on " + names_[k]);
    }
  }
  if (!std::isfinite(offset_)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite objective offset");
  }
  for (const LinearConstraint& c : constraints_) {
    if (!std::isfinite(c.rhs)) {
      throw Error(ErrorCode::kInvalidInput, "non-finite rhs in " + c.name);
    }
    for (const LinearTerm& t : c.terms) {
      if (t.var < 0 || t.var >= num_vars()) {
        throw Error(ErrorCode::kShape, "variable index out of range in " + c.name);
      }
      if (!std::isfinite(t.coef)) {
        throw Error(ErrorCode::kInvalidInput,
                    "non-finite coefficient in " + c.name);
      }
    }
  }
}

double LinearProgram::Objective(std::span<const double> x) const {
  double value = offset_;
  for (int k = 0; k < num_vars(); ++k) value += objective_[k] * x[k];
  return value;
}

double LinearProgram::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (int k = 0; k < num_vars(); ++k) {
    worst = std::max({worst, lower_[k] - x[k], x[k] - upper_[k]});
  }
  for (const LinearConstraint& c : constraints_) {
    double lhs = 0.0;
    for (const LinearTerm& t : c.terms) lhs += t.coef * x[t.var];
    switch (c.relation) {
      case Relation::kLessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

namespace {

// How an original variable maps onto nonnegative tableau columns.
enum class ColumnMap { kShift, kMirror, kSplit };

struct VarMapping {
  ColumnMap map = ColumnMap::kShift;
  int column = 0;
  double anchor = 0.0;  // lower bound (kShift) or upper bound (kMirror)
};

// Dense bounded-variable tableau. Every column j has 0 <= y_j <= upper[j];
// nonbasic columns sit at one of their bounds.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options) {
    Build(lp);
  }

  LpSolution Run(const LinearProgram& lp);

 private:
  enum class Outcome { kOptimal, kUnbounded };

  void Build(const LinearProgram& lp);
  void ComputeReducedCosts(const std::vector<double>& costs);
  Outcome Iterate(const std::vector<double>& costs);
  int ChooseEntering(bool bland) const;
  void Pivot(int row, int col);
  void DriveOutArtificials();
  std::vector<double> ColumnValues() const;

  double& T(int r, int c) { return tableau_[static_cast<std::size_t>(r) * cols_ + c]; }
  double T(int r, int c) const {
    return tableau_[static_cast<std::size_t>(r) * cols_ + c];
  }

  SimplexOptions options_;
  int rows_ = 0;
  int cols_ = 0;
  int first_artificial_ = 0;
  bool trivially_infeasible_ = false;
  std::vector<double> tableau_;
  std::vector<double> upper_;
  std::vector<double> costs_;
  std::vector<double> reduced_;
  std::vector<double> basic_value_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<char> at_upper_;
  std::vector<char> banned_;
  std::vector<VarMapping> mapping_;
  long iterations_ = 0;
  long max_iterations_ = 0;
};

void Tableau::Build(const LinearProgram& lp) {
  const int n = lp.num_vars();
  std::vector<double> col_cost;
  mapping_.resize(n);
  for (int k = 0; k < n; ++k) {
    const double lo = lp.lower()[k];
    const double hi = lp.upper()[k];
    const double c = lp.objective()[k];
    VarMapping& m = mapping_[k];
    m.column = static_cast<int>(upper_.size());
    if (std::isfinite(lo)) {
      m.map = ColumnMap::kShift;
      m.anchor = lo;
      upper_.push_back(std::isfinite(hi) ? hi - lo : kLpInfinity);
      col_cost.push_back(c);
    } else if (std::isfinite(hi)) {
      m.map = ColumnMap::kMirror;
      m.anchor = hi;
      upper_.push_back(kLpInfinity);
      col_cost.push_back(-c);
    } else {
      m.map = ColumnMap::kSplit;
      upper_.push_back(kLpInfinity);
      upper_.push_back(kLpInfinity);
      col_cost.push_back(c);
      col_cost.push_back(-c);
    }
  }
  const int structural = static_cast<int>(upper_.size());

  // Transformed rows, kept dense over the structural columns.
  struct Row {
    std::vector<double> coef;
    Relation relation;
    double rhs;
  };
  std::vector<Row> rows;
  rows.reserve(lp.constraints().size());
  for (const LinearConstraint& c : lp.constraints()) {
    Row row{std::vector<double>(structural, 0.0), c.relation, c.rhs};
    for (const LinearTerm& t : c.terms) {
      const VarMapping& m = mapping_[t.var];
      switch (m.map) {
        case ColumnMap::kShift:
          row.coef[m.column] += t.coef;
          row.rhs -= t.coef * m.anchor;
          break;
        case ColumnMap::kMirror:
          row.coef[m.column] -= t.coef;
          row.rhs -= t.coef * m.anchor;
          break;
        case ColumnMap::kSplit:
          row.coef[m.column] += t.coef;
          row.coef[m.column + 1] -= t.coef;
          break;
      }
    }
    double scale = 0.0;
    for (double x : row.coef) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) {
      // 0 (rel) rhs: either always satisfied or the program is infeasible.
      const double tol = options_.feasibility_tolerance;
      const bool ok = (row.relation == Relation::kLessEqual && row.rhs >= -tol) ||
                      (row.relation == Relation::kGreaterEqual && row.rhs <= tol) ||
                      (row.relation == Relation::kEqual && std::abs(row.rhs) <= tol);
      if (!ok) trivially_infeasible_ = true;
      continue;
    }
    for (double& x : row.coef) x /= scale;
    row.rhs /= scale;
    rows.push_back(std::move(row));
  }
  rows_ = static_cast<int>(rows.size());

  // Slack columns.
  std::vector<int> slack_of(rows_, -1);
  for (int r = 0; r < rows_; ++r) {
    if (rows[r].relation == Relation::kEqual) continue;
    slack_of[r] = static_cast<int>(upper_.size());
    upper_.push_back(kLpInfinity);
    col_cost.push_back(0.0);
  }
  // Sign of each row after forcing rhs >= 0, and which rows need an
  // artificial column.
  std::vector<double> sign(rows_, 1.0);
  std::vector<int> artificial_of(rows_, -1);
  first_artificial_ = static_cast<int>(upper_.size());
  for (int r = 0; r < rows_; ++r) {
    if (rows[r].rhs < 0.0) sign[r] = -1.0;
    const double slack_coef =
        rows[r].relation == Relation::kLessEqual ? sign[r] : -sign[r];
    if (slack_of[r] >= 0 && slack_coef > 0.0) continue;
    artificial_of[r] = static_cast<int>(upper_.size());
    upper_.push_back(kLpInfinity);
    col_cost.push_back(0.0);
  }
  cols_ = static_cast<int>(upper_.size());

  tableau_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
  basis_.assign(rows_, -1);
  basic_value_.assign(rows_, 0.0);
  is_basic_.assign(cols_, 0);
  at_upper_.assign(cols_, 0);
  banned_.assign(cols_, 0);
  for (int r = 0; r < rows_; ++r) {
    for (int j = 0; j < structural; ++j) T(r, j) = sign[r] * rows[r].coef[j];
    if (slack_of[r] >= 0) {
      T(r, slack_of[r]) =
          sign[r] * (rows[r].relation == Relation::kLessEqual ? 1.0 : -1.0);
    }
    if (artificial_of[r] >= 0) {
      T(r, artificial_of[r]) = 1.0;
      basis_[r] = artificial_of[r];
    } else {
      basis_[r] = slack_of[r];
    }
    is_basic_[basis_[r]] = 1;
    basic_value_[r] = sign[r] * rows[r].rhs;
  }
  costs_ = std::move(col_cost);
  max_iterations_ = options_.max_iterations > 0
                        ? options_.max_iterations
                        : 200L * (rows_ + cols_) + 1000L;
}

void Tableau::ComputeReducedCosts(const std::vector<double>& costs) {
  reduced_ = costs;
  for (int r = 0; r < rows_; ++r) {
    const double cb = costs[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = &tableau_[static_cast<std::size_t>(r) * cols_];
    for (int j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
  }
}

int Tableau::ChooseEntering(bool bland) const {
  const double tol = options_.pivot_tolerance;
  int best = -1;
  double best_score = 0.0;
  for (int j = 0; j < cols_; ++j) {
    if (is_basic_[j] || banned_[j] || upper_[j] == 0.0) continue;
    const double d = reduced_[j];
    const bool improving = at_upper_[j] ? d > tol : d < -tol;
    if (!improving) continue;
    if (bland) return j;
    if (std::abs(d) > best_score) {
      best_score = std::abs(d);
      best = j;
    }
  }
  return best;
}

void Tableau::Pivot(int row, int col) {
  double* pivot_row = &tableau_[static_cast<std::size_t>(row) * cols_];
  const double inv = 1.0 / pivot_row[col];
  std::vector<int> nonzero;
  nonzero.reserve(cols_);
  for (int j = 0; j < cols_; ++j) {
    if (pivot_row[j] == 0.0) continue;
    pivot_row[j] *= inv;
    nonzero.push_back(j);
  }
  pivot_row[col] = 1.0;
  for (int r = 0; r < rows_; ++r) {
    if (r == row) continue;
    double* target = &tableau_[static_cast<std::size_t>(r) * cols_];
    const double f = target[col];
    if (f == 0.0) continue;
    for (int j : nonzero) target[j] -= f * pivot_row[j];
    target[col] = 0.0;
  }
  const double fd = reduced_[col];
  if (fd != 0.0) {
    for (int j : nonzero) reduced_[j] -= fd * pivot_row[j];
    reduced_[col] = 0.0;
  }
  is_basic_[basis_[row]] = 0;
  basis_[row] = col;
  is_basic_[col] = 1;
}

Tableau::Outcome Tableau::Iterate(const std::vector<double>& costs) {
  ComputeReducedCosts(costs);
  const double ptol = options_.pivot_tolerance;
  int degenerate_run = 0;
  while (true) {
    if (++iterations_ > max_iterations_) {
      throw Error(ErrorCode::kInternal, "simplex iteration limit reached");
    }
    const bool bland =
        options_.rule == PivotRule::kBland || degenerate_run > 50;
    const int e = ChooseEntering(bland);
    if (e < 0) return Outcome::kOptimal;
    const double dir = at_upper_[e] ? -1.0 : 1.0;

    double theta = upper_[e];  // a bound flip of the entering column
    int leave = -1;
    bool leave_to_upper = false;
    for (int r = 0; r < rows_; ++r) {
      const double alpha = T(r, e) * dir;
      double t;
      bool to_upper;
      if (alpha > ptol) {
        t = std::max(0.0, basic_value_[r]) / alpha;
        to_upper = false;
      } else if (alpha < -ptol && std::isfinite(upper_[basis_[r]])) {
        t = std::max(0.0, upper_[basis_[r]] - basic_value_[r]) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      const double slack =
          std::isfinite(theta) ? 1e-12 * (1.0 + std::abs(theta)) : 0.0;
      if (t < theta - slack ||
          (t <= theta + slack && leave >= 0 && basis_[r] < basis_[leave])) {
        theta = t;
        leave = r;
        leave_to_upper = to_upper;
      }
    }
    if (!std::isfinite(theta)) return Outcome::kUnbounded;
    degenerate_run = theta == 0.0 ? degenerate_run + 1 : 0;

    const double step = theta * dir;
    for (int r = 0; r < rows_; ++r) {
      const double a = T(r, e);
      if (a != 0.0) basic_value_[r] -= step * a;
    }
    const double entering_value = (at_upper_[e] ? upper_[e] : 0.0) + step;
    if (leave < 0) {
      at_upper_[e] = at_upper_[e] ? 0 : 1;
      continue;
    }
    const int leaving = basis_[leave];
    at_upper_[leaving] = leave_to_upper ? 1 : 0;
    Pivot(leave, e);
    at_upper_[e] = 0;
    basic_value_[leave] = entering_value;
  }
}

void Tableau::DriveOutArtificials() {
  for (int r = 0; r < rows_; ++r) {
    if (basis_[r] < first_artificial_) continue;
    int best = -1;
    double best_abs = options_.pivot_tolerance;
    for (int j = 0; j < first_artificial_; ++j) {
      if (is_basic_[j]) continue;
      const double a = std::abs(T(r, j));
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    // A row with no usable column is redundant; its artificial stays basic
    // at zero and is never touched again.
    if (best < 0) continue;
    const double value = at_upper_[best] ? upper_[best] : 0.0;
    Pivot(r, best);
    at_upper_[best] = 0;
    basic_value_[r] = value;
  }
  for (int j = first_artificial_; j < cols_; ++j) banned_[j] = 1;
}

std::vector<double> Tableau::ColumnValues() const {
  std::vector<double> y(cols_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    if (!is_basic_[j] && at_upper_[j]) y[j] = upper_[j];
  }
  for (int r = 0; r < rows_; ++r) y[basis_[r]] = basic_value_[r];
  return y;
}

LpSolution Tableau::Run(const LinearProgram& lp) {
  LpSolution solution;
  if (trivially_infeasible_) {
    solution.status = LpStatus::kInfeasible;
    return solution;
  }
  // Phase 1: minimize the sum of artificial columns.
  if (first_artificial_ < cols_) {
    std::vector<double> phase1(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
    Iterate(phase1);
    double infeasibility = 0.0;
    double scale = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= first_artificial_) infeasibility += basic_value_[r];
      scale = std::max(scale, std::abs(basic_value_[r]));
    }
    if (infeasibility > 1e-9 * scale) {
      solution.status = LpStatus::kInfeasible;
      solution.iterations = static_cast<int>(iterations_);
      return solution;
    }
    DriveOutArtificials();
  }
  // Phase 2.
  const Outcome outcome = Iterate(costs_);
  solution.iterations = static_cast<int>(iterations_);
  if (outcome == Outcome::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  const std::vector<double> y = ColumnValues();
  std::vector<double> x(lp.num_vars(), 0.0);
  for (int k = 0; k < lp.num_vars(); ++k) {
    const VarMapping& m = mapping_[k];
    switch (m.map) {
      case ColumnMap::kShift:
        x[k] = m.anchor + y[m.column];
        break;
      case ColumnMap::kMirror:
        x[k] = m.anchor - y[m.column];
        break;
      case ColumnMap::kSplit:
        x[k] = y[m.column] - y[m.column + 1];
        break;
    }
    // Bounds hold exactly for nonbasic columns; clip rounding on basics.
    x[k] = std::clamp(x[k], lp.lower()[k], lp.upper()[k]);
  }
  solution.status = LpStatus::kOptimal;
  solution.objective_value = lp.Objective(x);
  solution.point = std::move(x);
  return solution;
}

}  // namespace

LpSolution Solve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.Validate();
  Tableau tableau(lp, options);
  LpSolution solution = tableau.Run(lp);
  if (solution.status == LpStatus::kOptimal) {
    const double violation = lp.MaxViolation(solution.point);
    if (violation > options.feasibility_tolerance) {
      throw Error(ErrorCode::kInternal,
                  "simplex returned a point violating constraints by " +
                      std::to_string(violation));
    }
  }
  return solution;
}

}  // namespace strictrd
