// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "../support/oracles.hpp"
#include "fedex/approx_mechanism.hpp"
#include "fedex/hard_instances.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/polygon.hpp"
#include "fedex/random_instance.hpp"
#include "fedex/revenue_curves.hpp"
#include "fedex/verify.hpp"

using namespace fedex;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the first few failures of a criterion.
struct Check {
  int failures = 0;
  std::string first;

  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  bool ok() const { return failures == 0; }
};

std::string str(const Rat& x) { return to_string(x); }

void time_limit(Check& c, Clock::time_point t0, double limit, const std::string& what) {
  double s = seconds_since(t0);
  std::ostringstream os;
  os << what << " took " << s << " s, limit " << limit << " s";
  c(s < limit, os.str());
}

// 1. Exponential menu complexity on the perturbed instance.
void exponential_complexity(Check& c) {
  for (int n = 2; n <= 6; ++n) {
    auto t0 = Clock::now();
    Mechanism m = fiat_optimal(build_curve_stack(perturbed_exponential(n)));
    MenuComplexity mc = menu_complexity(m);
    for (int i = 1; i <= n; ++i)
      c(mc.per_day[i - 1] == 1 << (i - 1), "n=" + std::to_string(n) + " day " + std::to_string(i) + " has " +
                                                std::to_string(mc.per_day[i - 1]) + " atoms");
    c(mc.total == (1 << n) - 1, "n=" + std::to_string(n) + " total " + std::to_string(mc.total));
    time_limit(c, t0, 10, "n=" + std::to_string(n));
  }
}

// 2. LP optimum equals the revenue of the constructed mechanism.
void lp_equivalence(Check& c) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::vector<FedexInstance> battery;
  for (int t = 0; t < 200; ++t) battery.push_back(random_instance(rng, 1 + t % 3, 1 + (t / 3) % 8));
  battery.push_back(exponential_instance(2));
  battery.push_back(exponential_instance(3));
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const FedexInstance& inst = battery[k];
    Mechanism m = fiat_optimal(build_curve_stack(inst));
    Rat rev = revenue_direct(assign_types(m, inst.v_max), inst);
    LpResult lp = lp_solve(inst);
    c(lp.optimum == rev, "instance " + std::to_string(k) + ": LP " + str(lp.optimum) + " vs " + str(rev));
    c(lp.certified, "instance " + std::to_string(k) + ": optimality certificate rejected");
  }
  time_limit(c, t0, 60, "battery");
}

// 3. Curve stack of the lba instance against its closed forms.
void lba_closed_forms(Check& c) {
  auto t0 = Clock::now();
  for (int n : {4, 8, 12}) {
    LbaParams p(n);
    CurveStack st = build_curve_stack(lba_instance(n));
    const std::string tag = "n=" + std::to_string(n);
    for (int i = 1; i <= n; ++i) {
      c(st.r(i) == 3 * n + i, tag + " r_" + std::to_string(i) + " = " + std::to_string(st.r(i)));
      for (int x = 0; x <= p.v_max; ++x) {
        c(st.geq(i)[x] * n == lba_closed_R(p, i, Rat(x)), tag + " R_geq mismatch at i=" + std::to_string(i) +
                                                               " x=" + std::to_string(x));
        c(st.ironed(i).envelope[x] * n == lba_closed_Rtilde(p, i, Rat(x)),
          tag + " envelope mismatch at i=" + std::to_string(i) + " x=" + std::to_string(x));
      }
    }
    Rat opt = st.opt() * n;
    c(opt == n * (2 * n + 1), tag + " OPT*n = " + str(opt));
    c(2 * n * n <= opt && opt <= 3 * n * n, tag + " OPT*n outside [2n^2, 3n^2]");
  }
  time_limit(c, t0, 5, "closed forms");
}

// 4. Menu structure, cleanliness and the density floor on lba instances.
void lba_structure(Check& c) {
  for (int n : {4, 8, 12}) {
    const std::string tag = "n=" + std::to_string(n);
    Mechanism m = fiat_optimal(build_curve_stack(lba_instance(n)));
    for (int i = 1; i <= n; ++i) {
      std::vector<Rat> want, got;
      for (int p = n + 2; p <= n + i; ++p) want.push_back(p);
      want.push_back(3 * n + i);
      for (const auto& a : m.day(i).atoms()) got.push_back(a.price);
      c(got == want, tag + " day " + std::to_string(i) + " atom set differs");
    }
    c(menu_complexity(m).total == n * (n + 1) / 2, tag + " total complexity " + std::to_string(menu_complexity(m).total));
    c(is_clean(m, n, 5 * n), tag + " mechanism is not clean");
    if (n >= 8) {
      auto v = density_floor_check(m, n, 5 * n);
      c(v.empty(), tag + " density " + (v.empty() ? "" : str(v[0].density)) + " below 1/(300n)");
    }
  }
}

double dyadic_budget_for(int v, const Rat& eps) {
  const double e = to_double(eps);
  const int c = ceil_log2(Rat(v));
  return 3.0 * (1 + c) + std::sqrt(9.0 / (8 * e)) + std::sqrt(18.0 / 8 * c / e);
}

// 5. Revenue, IC and complexity of the approximate mechanism.
void approximation(Check& c) {
  const std::vector<std::pair<std::string, FedexInstance>> cases{{"lba(8)", lba_instance(8)},
                                                                 {"perturbed(6)", perturbed_exponential(6)}};
  for (const auto& [name, inst] : cases) {
    CurveStack st = build_curve_stack(inst);
    for (const char* e : {"1/4", "1/10", "1/100"}) {
      auto t0 = Clock::now();
      const std::string tag = name + " eps=" + e;
      Rat eps = parse_rat(e);
      auto [m, rep] = approximate_mechanism(inst, st, eps);
      AssignedMechanism am = assign_types(m, inst.v_max);
      Rat rev = revenue_direct(am, inst);
      c(rev >= (1 - eps) * st.opt(), tag + " revenue " + str(rev) + " below (1-eps) OPT");
      c(check_ic(am).ok(), tag + " IC violated");
      int sum_k = 0;
      for (const auto& d : rep.days) {
        sum_k += d.k;
        double budget = d.scheme == "level" ? std::floor(1 / to_double(d.eps_param)) + 2
                                            : dyadic_budget_for(d.r, d.eps_param);
        c(d.k <= budget + 1e-9, tag + " day " + std::to_string(d.day) + ": |X| = " + std::to_string(d.k) +
                                    " over budget " + std::to_string(budget));
      }
      c(menu_complexity(m).total <= 2 * sum_k, tag + " complexity above 2 sum |X_i|");
      time_limit(c, t0, 30, tag);
    }
  }
}

// 6. Any approximation of LPL_k within 1/2 needs k-1 points, one per interval.
void polygon_tightness(Check& c) {
  for (int k : {4, 6, 8, 10}) {
    const std::string tag = "k=" + std::to_string(k);
    ConcavePL f = lpl(k);
    for (const auto& I : lpl_intervals(k)) {
      Rat chord = f(I.lo) + (f(I.hi) - f(I.lo)) * (I.mid - I.lo) / (I.hi - I.lo);
      c(f(I.mid) - chord == 1, tag + " midpoint gap at I_" + std::to_string(I.i) + " is " + str(f(I.mid) - chord));
    }
    for (Scheme s : {Scheme::greedy, Scheme::dyadic, Scheme::level, Scheme::best}) {
      int qualifying = 0;
      for (const char* e : {"1/2", "1/4", "1/16", "1/100", "1/1000", "1/10000"}) {
        PolygonApprox pa = run_scheme(s, f, parse_rat(e));
        if (pa.certified_error > frac(1, 2)) continue;
        ++qualifying;
        const std::string where = tag + " " + scheme_name(s) + " eps=" + e;
        c(int(pa.X.size()) >= k - 1, where + ": |X| = " + std::to_string(pa.X.size()));
        c(lpl_interval_cover_check(pa.X, k).empty(), where + ": interval cover fails");
      }
      c(qualifying > 0, tag + " " + scheme_name(s) + " never reached error 1/2");
    }
    c(oracle::min_breakpoint_cover(f, frac(1, 2)) >= k - 1, tag + " a breakpoint subset with fewer points exists");
  }
}

// 7. Certified errors within the contractual bounds.
void scheme_certificates(Check& c) {
  std::vector<ConcavePL> curves;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) curves.push_back(oracle::random_concave(rng, 2 + t % 12, 16 + 4 * t));
  CurveStack st = build_curve_stack(lba_instance(8));
  for (int i = 1; i <= 8; ++i) curves.push_back(ConcavePL::from_ironed(st.ironed(i), st.r(i)));
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const ConcavePL& f = curves[k];
    const Rat top = f(f.hi());
    for (const char* e : {"1/2", "1/10", "1/100"}) {
      Rat eps = parse_rat(e);
      const std::string tag = "curve " + std::to_string(k) + " eps=" + e;
      PolygonApprox g = greedy_eps_approx(f, eps);
      PolygonApprox d = dyadic_hybrid_approx(f, eps);
      PolygonApprox l = level_set_approx(f, eps);
      c(g.certified_error <= eps, tag + " greedy error " + str(g.certified_error));
      c(d.certified_error <= eps * (1 + top), tag + " dyadic error " + str(d.certified_error));
      c(l.certified_error <= eps * top, tag + " level error " + str(l.certified_error));
      for (const auto* pa : {&g, &d, &l}) {
        oracle::Gap gap = oracle::sampled_gap(f, pa->X, 200);
        c(gap.under && gap.max == pa->certified_error, tag + " " + pa->scheme + " certificate disagrees with sampling");
      }
    }
  }
}

// 8. The three-day regular example.
void regular_example(Check& c) {
  auto t0 = Clock::now();
  FedexInstance inst = regular_three_day(frac(1, 100), Rat(15));
  CurveStack st = build_curve_stack(inst);
  const double h = to_double(inst.value_scale);
  const double r3 = st.r(3) * h, r1 = st.r(1) * h;
  c(std::abs(r3 - 5) <= 0.02 + 1e-12, "r_geq3 = " + std::to_string(r3));
  c(std::abs(r1 - 1.07) <= 0.05, "r_geq1 = " + std::to_string(r1));
  const Interval* I = st.ironed(2).interval_containing(st.r(1));
  c(I != nullptr, "r_geq1 is not inside an ironed interval of day 2");
  if (I) {
    c(std::abs(I->lo * h - 0.245) <= 0.05, "interval starts at " + std::to_string(I->lo * h));
    c(std::abs(I->hi * h - 2.79) <= 0.05, "interval ends at " + std::to_string(I->hi * h));
  }
  c(fiat_optimal(st).day(2).size() >= 2, "day 2 is deterministic");
  time_limit(c, t0, 20, "regular example");
}

// 9. Property suites over every generated instance.
void property_suites(Check& c) {
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, FedexInstance>> insts;
  std::mt19937_64 rng(99);
  for (int t = 0; t < 120; ++t) insts.push_back({"random " + std::to_string(t), random_instance(rng, 1 + t % 4, 1 + t % 12)});
  for (int n = 2; n <= 5; ++n) insts.push_back({"exponential " + std::to_string(n), exponential_instance(n)});
  for (int n = 2; n <= 5; ++n) insts.push_back({"perturbed " + std::to_string(n), perturbed_exponential(n)});
  for (int n : {4, 8}) insts.push_back({"lba " + std::to_string(n), lba_instance(n)});
  insts.push_back({"regular3", regular_three_day(frac(1, 10), Rat(15))});

  for (const auto& [name, inst] : insts) {
    CurveStack st = build_curve_stack(inst);
    // virtual values
    for (int d = 1; d <= inst.n; ++d) {
      auto R = oracle::day_curve(inst, d);
      for (int v = 1; v < inst.v_max; ++v)
        c(virtual_value(inst, d, v) * inst.q[d - 1] == R[v] - R[v + 1],
          name + ": virtual value identity fails at day " + std::to_string(d) + " v=" + std::to_string(v));
    }
    // envelopes
    for (int i = 1; i <= inst.n; ++i) {
      const IronedCurve& ic = st.ironed(i);
      bool dom = true;
      for (int v = 0; v <= ic.domain_max(); ++v) dom = dom && ic.envelope[v] >= ic.base[v];
      c(dom, name + ": envelope below the curve on day " + std::to_string(i));
      bool concave = true;
      for (int v = 1; v + 1 <= ic.domain_max(); ++v)
        concave = concave && ic.envelope[v + 1] - ic.envelope[v] <= ic.envelope[v] - ic.envelope[v - 1];
      c(concave, name + ": envelope not concave on day " + std::to_string(i));
      IronedCurve again = iron(RevenueCurve{ic.envelope});
      c(again.ironed_intervals.empty() && again.envelope == ic.envelope, name + ": ironing is not idempotent");
      if (ic.domain_max() <= 64) c(ic.envelope == oracle::envelope(ic.base.values), name + ": envelope differs from chord oracle");
    }
    // revenue accounting
    Mechanism m = fiat_optimal(st);
    AssignedMechanism am = assign_types(m, inst.v_max);
    Rat direct = revenue_direct(am, inst);
    CurveRevenue cr = revenue_by_curves(m, st);
    c(direct == cr.continuation && direct == cr.per_day && direct == st.opt(), name + ": revenue accounting differs");
    c(direct == oracle::revenue(m, inst), name + ": revenue differs from the buyer-simulation oracle");
    c(check_ic(am).ok(), name + ": optimal mechanism fails IC");
    // derivative sum inequality
    for (int i = 1; i <= inst.n; ++i) {
      if (st.r(i) == 0) continue;
      DerivativeSum ds = derivative_sum_bound(ConcavePL::from_ironed(st.ironed(i), st.r(i)));
      c(ds.lhs >= ds.rhs, name + ": derivative sum inequality fails on day " + std::to_string(i));
    }
    // every snap of the approximate mechanism
    if (inst.v_max <= 64) {
      for (const char* e : {"1/3", "1/20"}) {
        auto [am2, rep] = approximate_mechanism(inst, st, parse_rat(e));
        for (int i = 2; i <= inst.n; ++i) {
          PriceMass before = push_forward(am2.day(i - 1), st.ironed(i), st.r(i));
          c(downward_ic_audit(before, am2.day(i), inst.v_max).empty(),
            name + " eps=" + e + ": snap lowers some utility on day " + std::to_string(i));
        }
        c(rep.revenue_ok && rep.accounting_ok, name + " eps=" + e + ": approximation accounting fails");
        c(check_ic(assign_types(am2, inst.v_max)).ok(), name + " eps=" + e + ": approximation fails IC");
      }
    }
  }
  // hull and one-sided derivative checks
  std::uniform_int_distribution<int> y(0, 30);
  for (int t = 0; t < 60; ++t) {
    std::vector<Point> cloud;
    for (int x = 0; x <= 10 + t % 20; ++x) cloud.push_back({Rat(x), Rat(y(rng)) / Rat(3)});
    ConcavePL h = ConcavePL::hull_of(cloud);
    for (const auto& p : cloud) {
      c(h(p.x) >= p.y, "hull below a point");
      c(h.left_slope(p.x) >= h.right_slope(p.x), "left slope below right slope");
    }
    std::vector<Rat> X{h.lo(), (h.lo() + h.hi()) / 2, h.hi()};
    ConcavePL g = tangent_stitch(h, X);
    c(g.segments() <= 2 * int(X.size()), "stitched curve has too many segments");
    for (const auto& p : h.points()) c(g(p.x) >= p.y, "stitched curve below f");
    for (const auto& x : X) c(g(x) == h(x), "stitched curve leaves f at an X point");
  }
  time_limit(c, t0, 120, "property suites");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"exponential menu complexity 1, 2, 4, ..., 2^(n-1)", exponential_complexity},
      {"LP optimum equals constructed revenue", lp_equivalence},
      {"lba curves match closed forms", lba_closed_forms},
      {"lba optimal menu structure and density floor", lba_structure},
      {"approximate mechanism revenue, IC and complexity", approximation},
      {"LPL_k needs k-1 points within error 1/2", polygon_tightness},
      {"scheme error certificates within bounds", scheme_certificates},
      {"three-day regular example is randomized", regular_example},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    auto t0 = Clock::now();
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s (%.2f s)", c.ok() ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                seconds_since(t0));
    if (!c.ok()) std::printf(" -- %d failure(s), first: %s", c.failures, c.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failed += !c.ok();
  }
  return failed == 0 ? 0 : 1;
}
