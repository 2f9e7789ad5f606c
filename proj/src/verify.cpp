#include "fedex/verify.hpp"

#include <stdexcept>

namespace fedex {

AssignedMechanism assign_types(const Mechanism& mech, int v_max) {
  AssignedMechanism am;
  am.n = mech.n();
  am.v_max = v_max;
  am.pi.assign(am.n, std::vector<Rat>(v_max + 1));
  am.pay.assign(am.n, std::vector<Rat>(v_max + 1));
  for (int i = 1; i <= am.n; ++i) {
    Menu menu = menu_from_prices(mech.day(i));
    for (int v = 1; v <= v_max; ++v) {
      Rat best_u = 0, best_pi = 0, best_pay = 0;
      for (const auto& o : menu.options) {
        Rat u = o.prob * v - o.payment;
        int c = cmp(u, best_u);
        if (c > 0 || (c == 0 && o.prob > best_pi)) {
          best_u = u;
          best_pi = o.prob;
          best_pay = o.payment;
        }
      }
      am.pi[i - 1][v] = best_pi;
      am.pay[i - 1][v] = best_pay;
    }
  }
  return am;
}

IcReport check_ic(const AssignedMechanism& am) {
  IcReport rep;
  auto need = [&](const char* family, int v, int i, const Rat& lhs, const Rat& rhs) {
    if (lhs < rhs) rep.violations.push_back({family, v, i, Rat(lhs - rhs)});
  };
  for (int i = 1; i <= am.n; ++i) {
    for (int v = 0; v <= am.v_max; ++v) {
      Rat u = am.utility(v, i);
      if (v >= 1) need("leftwards", v, i, u, Rat(am.prob(v - 1, i) * v - am.payment(v - 1, i)));
      if (v < am.v_max) need("rightwards", v, i, u, Rat(am.prob(v + 1, i) * v - am.payment(v + 1, i)));
      if (i > 1) need("downwards", v, i, u, Rat(am.prob(v, i - 1) * v - am.payment(v, i - 1)));
      need("feasibility", v, i, Rat(1), am.prob(v, i));
      need("feasibility", v, i, am.prob(v, i), Rat(0));
    }
  }
  if (am.n >= 1) {
    if (am.prob(0, 1) != 0) rep.violations.push_back({"individual_rationality", 0, 1, Rat(-abs_rat(am.prob(0, 1)))});
    if (am.payment(0, 1) != 0)
      rep.violations.push_back({"individual_rationality", 0, 1, Rat(-abs_rat(am.payment(0, 1)))});
  }
  return rep;
}

Rat revenue_direct(const AssignedMechanism& am, const FedexInstance& inst) {
  Rat total = 0;
  for (int i = 1; i <= inst.n; ++i)
    for (int v = 0; v <= inst.v_max; ++v) {
      const Rat& f = inst.pmf[i - 1][v];
      if (f != 0) total += inst.q[i - 1] * f * am.payment(v, i);
    }
  return total;
}

namespace {

int grid_price(const Rat& p, int v_max) {
  if (p.get_den() != 1 || p < 0 || p > v_max)
    throw std::invalid_argument("price " + to_string(p) + " is not a grid point");
  return static_cast<int>(p.get_num().get_si());
}

}  // namespace

CurveRevenue revenue_by_curves(const Mechanism& mech, const CurveStack& stack) {
  CurveRevenue out;
  const int v_max = stack.geq(1).domain_max();
  for (const auto& a : mech.day(1).atoms()) out.continuation += a.mass * stack.geq(1)[grid_price(a.price, v_max)];
  for (int i = 1; i <= mech.n(); ++i)
    for (const auto& a : mech.day(i).atoms()) out.per_day += a.mass * stack.day(i)[grid_price(a.price, v_max)];
  return out;
}

LpModel build_lp(const FedexInstance& inst) {
  require_valid(inst);
  LpModel mdl;
  mdl.n = inst.n;
  mdl.v_max = inst.v_max;
  const int n = inst.n, vm = inst.v_max;
  auto& lp = mdl.problem;
  mdl.pi_col.assign(n, std::vector<int>(vm + 1, -1));
  mdl.pay_pos_col = mdl.pi_col;
  mdl.pay_neg_col = mdl.pi_col;
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v <= vm; ++v) {
      if (i == 1 && v == 0) continue;
      mdl.pi_col[i - 1][v] = lp.num_vars++;
      mdl.pay_pos_col[i - 1][v] = lp.num_vars++;
      mdl.pay_neg_col[i - 1][v] = lp.num_vars++;
    }
  mdl.fixed_constraints = 2;

  lp.objective.assign(lp.num_vars, Rat(0));
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v <= vm; ++v) {
      int c = mdl.pay_pos_col[i - 1][v];
      if (c < 0) continue;
      Rat w = inst.q[i - 1] * inst.pmf[i - 1][v];
      lp.objective[c] = w;
      lp.objective[mdl.pay_neg_col[i - 1][v]] = -w;
    }

  using Row = std::vector<std::pair<int, Rat>>;
  // Adds a*pi(v,i) - a_pay*p(v,i) to the row.
  auto term = [&](Row& row, int v, int i, const Rat& a_pi, const Rat& a_pay) {
    int c = mdl.pi_col[i - 1][v];
    if (c < 0) return;
    if (a_pi != 0) row.emplace_back(c, a_pi);
    if (a_pay != 0) {
      row.emplace_back(mdl.pay_pos_col[i - 1][v], a_pay);
      row.emplace_back(mdl.pay_neg_col[i - 1][v], Rat(-a_pay));
    }
  };
  // Deviation (dv, di) gives type (v, i) no more utility than truth:
  // pi(dv,di) v - p(dv,di) - pi(v,i) v + p(v,i) <= 0.
  auto ic_row = [&](const std::string& name, int v, int i, int dv, int di) {
    Row row;
    term(row, dv, di, Rat(v), Rat(-1));
    term(row, v, i, Rat(-v), Rat(1));
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(0);
    lp.row_names.push_back(name + "(" + std::to_string(v) + "," + std::to_string(i) + ")");
  };
  for (int i = 1; i <= n; ++i)
    for (int v = 1; v <= vm; ++v) ic_row("leftwards", v, i, v - 1, i);
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v < vm; ++v) ic_row("rightwards", v, i, v + 1, i);
  for (int i = 2; i <= n; ++i)
    for (int v = 0; v <= vm; ++v) ic_row("downwards", v, i, v, i - 1);
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v <= vm; ++v) {
      int c = mdl.pi_col[i - 1][v];
      if (c < 0) continue;
      lp.rows.push_back({{c, Rat(1)}});
      lp.rhs.emplace_back(1);
      lp.row_names.push_back("feasibility(" + std::to_string(v) + "," + std::to_string(i) + ")");
    }
  return mdl;
}

LpResult lp_solve(const FedexInstance& inst, int limit) {
  if (inst.n * (inst.v_max + 1) > limit)
    throw std::length_error("LP too large: n*(v_max+1) = " + std::to_string(inst.n * (inst.v_max + 1)) +
                            " exceeds limit " + std::to_string(limit));
  LpModel mdl = build_lp(inst);
  LpSolution sol = simplex_maximize(mdl.problem);
  LpResult res;
  res.optimum = sol.value;
  res.pivots = sol.pivots;
  res.certified = certify_optimal(mdl.problem, sol);
  auto& am = res.mechanism;
  am.n = inst.n;
  am.v_max = inst.v_max;
  am.pi.assign(inst.n, std::vector<Rat>(inst.v_max + 1));
  am.pay = am.pi;
  for (int i = 1; i <= inst.n; ++i)
    for (int v = 0; v <= inst.v_max; ++v) {
      int c = mdl.pi_col[i - 1][v];
      if (c < 0) continue;
      am.pi[i - 1][v] = sol.x[c];
      am.pay[i - 1][v] = sol.x[mdl.pay_pos_col[i - 1][v]] - sol.x[mdl.pay_neg_col[i - 1][v]];
    }
  return res;
}

std::vector<DensityViolation> density_floor_check(const Mechanism& mech, int n, int v_max) {
  std::vector<DensityViolation> out;
  const Rat floor = frac(1, 300L * n);
  for (int i = 1; i <= mech.n(); ++i) {
    if (4 * i < n || 2 * i >= n) continue;
    auto ac = allocation_curve(mech.day(i), v_max);
    for (int j = n + 2; 4 * j <= 5 * n && j <= v_max; ++j)
      if (ac.density(j) < floor) out.push_back({i, j, ac.density(j)});
  }
  return out;
}

}  // namespace fedex
