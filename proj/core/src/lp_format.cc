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

#include <cmath>
#include <sstream>
#include <string>

#include "strictrd/lp.h"

namespace strictrd {
namespace {

void AppendTerm(std::ostringstream& out, double coef, std::string_view name,
                bool first) {
  if (coef < 0.0) {
    out << (first ? "-" : " - ");
  } else if (!first) {
    out << " + ";
  }
  out << std::abs(coef) << ' ' << name;
}

}  // namespace

std::string FormatLp(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  out << "\\ objective offset " << lp.objective_offset() << "\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (int k = 0; k < lp.num_vars(); ++k) {
    if (lp.objective()[k] == 0.0) continue;
    if (first) out << ' ';
    AppendTerm(out, lp.objective()[k], lp.var_name(k), first);
    first = false;
  }
  if (first) out << " 0 " << (lp.num_vars() > 0 ? lp.var_name(0) : "x0");
  out << "\nSubject To\n";
  for (const LinearConstraint& c : lp.constraints()) {
    out << ' ' << c.name << ':';
    first = true;
    for (const LinearTerm& t : c.terms) {
      if (first) out << ' ';
      AppendTerm(out, t.coef, lp.var_name(t.var), first);
      first = false;
    }
    if (first) out << " 0 " << (lp.num_vars() > 0 ? lp.var_name(0) : "x0");
    switch (c.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << c.rhs << "\n";
  }
  out << "Bounds\n";
  for (int k = 0; k < lp.num_vars(); ++k) {
    const double lo = lp.lower()[k];
    const double hi = lp.upper()[k];
    out << ' ';
    if (std::isinf(lo) && std::isinf(hi)) {
      out << lp.var_name(k) << " free\n";
      continue;
    }
    if (std::isinf(lo)) {
      out << "-inf";
    } else {
      out << lo;
    }
    out << " <= " << lp.var_name(k) << " <= ";
    if (std::isinf(hi)) {
      out << "+inf";
    } else {
      out << hi;
    }
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace strictrd
