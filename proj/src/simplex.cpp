#include "fedex/simplex.hpp"

#include <stdexcept>

namespace fedex {

LpSolution simplex_maximize(const LpProblem& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int nv = lp.num_vars;
  const int cols = nv + m;
  if (static_cast<int>(lp.rhs.size()) != m || static_cast<int>(lp.objective.size()) != nv)
    throw std::invalid_argument("inconsistent LP dimensions");

  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols));
  std::vector<Rat> b(lp.rhs);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0) throw std::invalid_argument("LP needs a nonnegative right-hand side");
    for (const auto& [j, a] : lp.rows[r]) t[r][j] += a;
    t[r][nv + r] = 1;
    basis[r] = nv + r;
  }
  // Reduced costs c_j - z_j; the objective value is tracked separately.
  std::vector<Rat> red(cols);
  for (int j = 0; j < nv; ++j) red[j] = lp.objective[j];
  Rat value = 0;

  LpSolution sol;
  std::vector<int> nz;
  for (;;) {
    int e = -1;
    for (int j = 0; j < cols; ++j)
      if (sgn(red[j]) > 0) {
        e = j;
        break;
      }
    if (e < 0) break;

    int leave = -1;
    Rat best;
    for (int r = 0; r < m; ++r) {
      if (sgn(t[r][e]) <= 0) continue;
      Rat ratio = b[r] / t[r][e];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("LP is unbounded");

    auto& prow = t[leave];
    Rat piv = prow[e];
    nz.clear();
    for (int j = 0; j < cols; ++j)
      if (sgn(prow[j]) != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    b[leave] /= piv;

    for (int r = 0; r < m; ++r) {
      if (r == leave || sgn(t[r][e]) == 0) continue;
      Rat f = t[r][e];
      for (int j : nz) t[r][j] -= f * prow[j];
      b[r] -= f * b[leave];
    }
    if (sgn(red[e]) != 0) {
      Rat f = red[e];
      for (int j : nz) red[j] -= f * prow[j];
      value += f * b[leave];
    }
    basis[leave] = e;
    ++sol.pivots;
  }

  sol.value = value;
  sol.x.assign(nv, Rat(0));
  for (int r = 0; r < m; ++r)
    if (basis[r] < nv) sol.x[basis[r]] = b[r];
  sol.y.resize(m);
  for (int r = 0; r < m; ++r) sol.y[r] = -red[nv + r];
  return sol;
}

bool certify_optimal(const LpProblem& lp, const LpSolution& sol, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const int m = static_cast<int>(lp.rows.size());
  Rat primal = 0, dual = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (sol.x[j] < 0) return fail("x[" + std::to_string(j) + "] < 0");
    primal += lp.objective[j] * sol.x[j];
  }
  std::vector<Rat> aty(lp.num_vars);
  for (int r = 0; r < m; ++r) {
    if (sol.y[r] < 0) return fail("y[" + std::to_string(r) + "] < 0");
    Rat lhs = 0;
    for (const auto& [j, a] : lp.rows[r]) {
      lhs += a * sol.x[j];
      aty[j] += a * sol.y[r];
    }
    if (lhs > lp.rhs[r]) return fail("row " + std::to_string(r) + " violated");
    if (sol.y[r] != 0 && lhs != lp.rhs[r]) return fail("row " + std::to_string(r) + " slack with positive dual");
    dual += lp.rhs[r] * sol.y[r];
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    if (aty[j] < lp.objective[j]) return fail("dual constraint " + std::to_string(j) + " violated");
    if (sol.x[j] != 0 && aty[j] != lp.objective[j]) return fail("column " + std::to_string(j) + " not complementary");
  }
  if (primal != dual) return fail("primal " + to_string(primal) + " != dual " + to_string(dual));
  if (primal != sol.value) return fail("reported value does not match x");
  return true;
}

}  // namespace fedex
