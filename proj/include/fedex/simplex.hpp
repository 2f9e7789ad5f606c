#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fedex/rational.hpp"

namespace fedex {

// maximize c.x  subject to  A x <= b,  x >= 0, with b >= 0 so the slack basis
// is feasible from the start.
struct LpProblem {
  int num_vars = 0;
  std::vector<std::vector<std::pair<int, Rat>>> rows;  // sparse rows of A
  std::vector<Rat> rhs;
  std::vector<Rat> objective;
  std::vector<std::string> row_names;
};

struct LpSolution {
  Rat value;
  std::vector<Rat> x;  // primal
  std::vector<Rat> y;  // dual, one per row
  long pivots = 0;
};

// Exact tableau simplex with Bland's rule. Throws std::runtime_error when the
// problem is unbounded.
LpSolution simplex_maximize(const LpProblem& lp);

// Primal and dual feasibility plus equal objective values, checked against the
// original problem data.
bool certify_optimal(const LpProblem& lp, const LpSolution& sol, std::string* why = nullptr);

}  // namespace fedex
