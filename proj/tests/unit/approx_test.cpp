#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "fedex/approx_mechanism.hpp"
#include "fedex/hard_instances.hpp"
#include "fedex/random_instance.hpp"
#include "fedex/verify.hpp"

using namespace fedex;

TEST_CASE("augment_anchors") {
  IronedCurve ic = iron(RevenueCurve{{0, 0, 0, 0, 4, 5, 6, 5}});
  AnchorSet a = augment_anchors(ic, {Rat(5), frac(3, 2), Rat(0)});
  CHECK(a.points == std::vector<int>{0, 4, 5});
  REQUIRE(a.provenance.size() == 3);
  CHECK(a.provenance[0].lo == 5);
  CHECK(a.provenance[0].hi == 5);
  CHECK(a.provenance[1].lo == 0);
  CHECK(a.provenance[1].hi == 4);
  for (int p : a.points) CHECK_FALSE(ic.ironed_at(p));
  CHECK_THROWS_AS(augment_anchors(ic, {Rat(8)}), std::out_of_range);

  // grid point inside the long linear piece of an lba envelope
  const int n = 8;
  CurveStack st = build_curve_stack(lba_instance(n));
  for (int i = 2; i <= n; ++i) {
    const IronedCurve& e = st.ironed(i);
    int x = n + i + 1;
    REQUIRE(e.ironed_at(x));
    AnchorSet b = augment_anchors(e, {Rat(x)});
    CHECK(b.provenance[0].lo == n + i);
    CHECK(b.provenance[0].hi == 3 * n + i);
  }
}

TEST_CASE("snap_day and the utility audit") {
  AnchorSet a;
  a.points = {0, 4, 8};
  PriceMass one = PriceMass::point(Rat(4));
  CHECK(snap_day(one, a) == one);
  CHECK(downward_ic_audit(one, one, 10).empty());

  PriceMass five = PriceMass::point(Rat(5));
  PriceMass snapped = snap_day(five, a);
  CHECK(snapped == PriceMass({{Rat(4), frac(3, 4)}, {Rat(8), frac(1, 4)}}));
  CHECK(downward_ic_audit(five, snapped, 10).empty());

  PriceMass upward = PriceMass::point(Rat(8));
  auto v = downward_ic_audit(five, upward, 10);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().x == 6);

  CHECK_THROWS_AS(snap_day(PriceMass::point(Rat(9)), a), std::invalid_argument);
}

TEST_CASE("snapping the lba day-3 optimum onto four anchors") {
  const int n = 8;
  CurveStack st = build_curve_stack(lba_instance(n));
  Mechanism opt = fiat_optimal(st);
  ConcavePL g = ConcavePL::from_ironed(st.ironed(3), st.r(3));
  std::vector<Rat> X{Rat(0), Rat(n + 1), Rat(n + 4), Rat(st.r(3))};
  AnchorSet a = augment_anchors(st.ironed(3), X);
  PriceMass snapped = snap_day(opt.day(3), a);
  CHECK(snapped.size() <= 2 * X.size());
  CHECK(downward_ic_audit(opt.day(3), snapped, 5 * n).empty());
  Rat loss = 0;
  for (const auto& atom : opt.day(3).atoms()) loss += atom.mass * st.geq(3)[to_int(atom.price)];
  for (const auto& atom : snapped.atoms()) loss -= atom.mass * st.geq(3)[to_int(atom.price)];
  CHECK(loss > 0);
  CHECK(loss <= max_gap(g, X));
}

TEST_CASE("approximate_mechanism end to end") {
  struct Case {
    FedexInstance inst;
    const char* eps;
  };
  std::vector<Case> cases{{lba_instance(8), "1/10"}, {perturbed_exponential(5), "1/4"}, {lba_instance(4), "1/100"}};
  for (const auto& c : cases) {
    CurveStack st = build_curve_stack(c.inst);
    Rat eps = parse_rat(c.eps);
    auto [m, rep] = approximate_mechanism(c.inst, st, eps);
    AssignedMechanism am = assign_types(m, c.inst.v_max);
    CHECK(check_ic(am).ok());
    CHECK(rep.revenue == revenue_direct(am, c.inst));
    CHECK(rep.revenue == oracle::revenue(m, c.inst));
    CHECK(rep.revenue >= (1 - eps) * st.opt());
    CHECK(rep.revenue_ok);
    CHECK(rep.accounting_ok);
    CHECK(rep.complexity == menu_complexity(m).total);
    CHECK(rep.complexity <= rep.complexity_bound);
    for (const auto& d : rep.days) {
      CHECK(d.budget_ok);
      CHECK(d.audit_ok);
      CHECK(d.atoms <= 2 * d.k);
      CHECK(d.anchors <= 2 * d.k);
      CHECK(d.loss >= 0);
      CHECK(d.loss <= d.eps_i);
      CHECK(d.anchor_error <= d.certified_error);
    }
    CHECK(m.day(1) == PriceMass::point(Rat(st.r(1))));
  }
  const FedexInstance six = perturbed_exponential(6);
  auto [m6, r6] = approximate_mechanism(six, build_curve_stack(six), frac(1, 4));
  CHECK(r6.complexity < 63);
  CHECK(r6.revenue_ok);

  CHECK_THROWS_AS(approximate_mechanism(six, build_curve_stack(six), Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(approximate_mechanism(six, build_curve_stack(six), Rat(0)), std::invalid_argument);
}

TEST_CASE("small eps reproduces the optimum") {
  const FedexInstance inst = lba_instance(4);
  CurveStack st = build_curve_stack(inst);
  auto [m, rep] = approximate_mechanism(inst, st, frac(1, 100000), Scheme::greedy);
  CHECK(rep.revenue == st.opt());
  for (const auto& d : rep.days) CHECK(d.loss == 0);
}

TEST_CASE("fallback below unit revenue") {
  std::mt19937_64 rng(6);
  int seen = 0;
  for (int t = 0; t < 60; ++t) {
    FedexInstance inst = random_instance(rng, 1 + t % 3, 2 + t % 6);
    CurveStack st = build_curve_stack(inst);
    auto [m, rep] = approximate_mechanism(inst, st, frac(1, 5));
    CHECK(rep.fallback == (st.opt() < 1));
    if (rep.fallback) {
      ++seen;
      CHECK(rep.scheme == "level");
    }
    CHECK(rep.revenue_ok);
    CHECK(rep.accounting_ok);
    CHECK(check_ic(assign_types(m, inst.v_max)).ok());
  }
  CHECK(seen > 0);
}

TEST_CASE("revenue does not drop as level-set eps halves") {
  std::mt19937_64 rng(71);
  std::vector<FedexInstance> battery{lba_instance(8), perturbed_exponential(5)};
  for (int t = 0; t < 20; ++t) battery.push_back(random_instance(rng, 2 + t % 2, 4 + t % 5));
  for (const auto& inst : battery) {
    CurveStack st = build_curve_stack(inst);
    Rat prev = -1;
    for (int e = 1; e <= 6; ++e) {
      auto [m, rep] = approximate_mechanism(inst, st, frac(1, 1L << e), Scheme::level);
      CHECK(rep.revenue >= prev);
      prev = rep.revenue;
    }
  }
}
