#pragma once

#include <string>
#include <vector>

#include "fedex/instance.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/revenue_curves.hpp"
#include "fedex/simplex.hpp"

namespace fedex {

struct AssignedMechanism {
  int n = 0;
  int v_max = 0;
  std::vector<std::vector<Rat>> pi;   // pi[i-1][v]
  std::vector<std::vector<Rat>> pay;  // pay[i-1][v]

  const Rat& prob(int v, int i) const { return pi[i - 1][v]; }
  const Rat& payment(int v, int i) const { return pay[i - 1][v]; }
  Rat utility(int v, int i) const { return prob(v, i) * v - payment(v, i); }
};

struct IcViolation {
  std::string family;  // leftwards | rightwards | downwards | feasibility | individual_rationality
  int v = 0;
  int day = 0;
  Rat slack;  // negative amount by which the constraint fails
};

struct IcReport {
  std::vector<IcViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Each type buys its utility-maximizing option of its own day's menu, the null
// option included. Ties go to the larger allocation, except at value 0 where
// every option ties with the null option and the type keeps the null option.
AssignedMechanism assign_types(const Mechanism& mech, int v_max);

IcReport check_ic(const AssignedMechanism& am);

Rat revenue_direct(const AssignedMechanism& am, const FedexInstance& inst);

struct CurveRevenue {
  Rat continuation;  // sum_j a_1(j) R_{>=1}(p_j)
  Rat per_day;       // sum_i sum_j a_i(j) R_i(p_j)
};

// Prices must be grid points.
CurveRevenue revenue_by_curves(const Mechanism& mech, const CurveStack& stack);

struct LpModel {
  int n = 0;
  int v_max = 0;
  LpProblem problem;
  // Column bookkeeping; -1 marks a variable fixed at zero.
  std::vector<std::vector<int>> pi_col, pay_pos_col, pay_neg_col;
  int fixed_constraints = 0;
  std::size_t constraint_count() const { return problem.rows.size() + fixed_constraints; }
};

LpModel build_lp(const FedexInstance& inst);

struct LpResult {
  Rat optimum;
  AssignedMechanism mechanism;
  long pivots = 0;
  bool certified = false;
};

constexpr int kDefaultLpLimit = 80;

// Throws std::length_error when n * (v_max + 1) exceeds `limit`.
LpResult lp_solve(const FedexInstance& inst, int limit = kDefaultLpLimit);

struct DensityViolation {
  int day = 0;
  int j = 0;
  Rat density;
};

// Days i with n/4 <= i < n/2 must put mass >= 1/(300 n) on every j in [n+2, n+n/4].
std::vector<DensityViolation> density_floor_check(const Mechanism& mech, int n, int v_max);

}  // namespace fedex
