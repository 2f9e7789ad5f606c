#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "fedex/hard_instances.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/revenue_curves.hpp"

using namespace fedex;

namespace {

std::vector<Rat> revenue_of(const std::vector<Rat>& pmf) {
  std::vector<Rat> R(pmf.size());
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    Rat tail = 0;
    for (std::size_t x = v; x < pmf.size(); ++x) tail += pmf[x];
    R[v] = Rat(long(v)) * tail;
  }
  return R;
}

}  // namespace

TEST_CASE("lba parameters") {
  for (int n = 4; n <= 24; ++n) {
    LbaParams p(n);
    CHECK(p.lambda == 1 + frac(1, 4L * n));
    CHECK(p.v_max == 5 * n);
    CHECK(p.S[0] == n);
    CHECK(p.S[1] == n + 1);
    CHECK(p.beta[1] == frac(1, 2) + Rat(5) / (4 * p.lambda * (3 * n + 1)));
    for (int i = 1; i < n; ++i) CHECK(p.beta[i] < p.beta[i + 1]);
    CHECK(p.beta[1] > frac(1, 2));
    CHECK(p.beta[n] <= frac(3, 4));
  }
  CHECK_THROWS_AS(LbaParams(3), std::invalid_argument);
}

TEST_CASE("lba closed forms at named points") {
  for (int n : {4, 8, 12}) {
    LbaParams p(n);
    for (int i = 1; i <= n; ++i) {
      CHECK(lba_closed_R(p, i, Rat(n)) == (n + 1 - i) * n);
      CHECK(lba_closed_Rtilde(p, i, Rat(3 * n + i)) == (n + 1 - i) * (2 * n * p.C + p.S[i]));
      Rat x = n + i + 1;
      CHECK(lba_closed_Rtilde(p, i, x) - lba_closed_R(p, i, x) == (p.beta[i] - p.C) * (2 * n - 1));
    }
    CHECK_THROWS_AS(lba_closed_R(p, 0, Rat(1)), std::out_of_range);
    CHECK_THROWS_AS(lba_closed_Rtilde(p, 1, Rat(5 * n + 1)), std::out_of_range);
  }
}

TEST_CASE("lba instance") {
  FedexInstance inst = lba_instance(8);
  CHECK(validate(inst).empty());
  for (int i = 1; i <= 8; ++i) CHECK(marginal_cdf(inst, i)[3 * 8 + i] == 1);
  CHECK_THROWS_AS(lba_instance(2), std::invalid_argument);
}

TEST_CASE("distribution from a revenue sequence") {
  CHECK(dist_from_rev_sequence({1, 1, 1}, 3) == std::vector<Rat>{0, frac(1, 2), frac(1, 6), frac(1, 3)});
  CHECK(dist_from_rev_sequence({1}, 1) == std::vector<Rat>{0, 1});
  CHECK_THROWS_WITH_AS(dist_from_rev_sequence({2, 2}, 2), doctest::Contains("r_1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(dist_from_rev_sequence({1, 1, 2}, 3), doctest::Contains("r_3 - r_2"), std::invalid_argument);
  CHECK_THROWS_AS(dist_from_rev_sequence({1, 1}, 3), std::invalid_argument);

  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const int v = 1 + t % 20;
    std::uniform_int_distribution<int> step(-99, 99);
    std::vector<Rat> r{Rat(1)};
    while (int(r.size()) < v) r.push_back(r.back() + Rat(step(rng)) / Rat(200L * v));
    auto pmf = dist_from_rev_sequence(r, v);
    auto F = marginal_cdf(FedexInstance{1, v, {Rat(1)}, {pmf}}, 1);
    CHECK(F.front() >= 0);
    CHECK(std::is_sorted(F.begin(), F.end()));
    auto R = revenue_of(pmf);
    for (int i = 1; i <= v; ++i) CHECK(R[i] == r[i - 1]);
  }
}

TEST_CASE("bit sequences") {
  for (int n = 2; n <= 6; ++n) {
    BitSeqParams p = bit_seq_params(n, false);
    CHECK(p.eps < frac(1, 2L * p.v_max));
    for (int m = 1; m <= n; ++m) {
      auto r = bit_revenue_sequence(n, m, p.v_max, p.eps);
      CHECK(r.front() == 1);
      for (std::size_t j = 1; j < r.size(); ++j) CHECK(abs_rat(r[j] - r[j - 1]) <= p.eps);
    }
    BitSeqParams q = bit_seq_params(n, true);
    CHECK(q.v_max == 1 << n);
    CHECK(q.eps == frac(1, 4L * q.v_max));
  }
  CHECK(bit(6, 1) == 0);
  CHECK(bit(6, 2) == 1);
  CHECK(bit(6, 3) == 1);
  CHECK_THROWS_AS(bit_revenue_sequence(3, 4, 7, frac(1, 64)), std::out_of_range);
}

TEST_CASE("plain exponential instance") {
  for (int n = 2; n <= 5; ++n) {
    FedexInstance inst = exponential_instance(n);
    CHECK(validate(inst).empty());
    CHECK(inst.v_max == (1 << n) - 1);
  }
  FedexInstance e4 = exponential_instance(4);
  CurveStack st = build_curve_stack(e4);
  CHECK(argmax(st.day(1)) == 8);
  for (int i = 2; i < 4; ++i) {
    IronedCurve ic = iron(st.day(i));
    for (int v = 1; v <= e4.v_max; ++v) CHECK(ic.envelope[v] == ic.envelope[1]);
  }
  CHECK_THROWS_AS(exponential_instance(1), std::out_of_range);
  CHECK_THROWS_AS(exponential_instance(11), std::out_of_range);
  CHECK_NOTHROW(exponential_instance(3, 3));
}

TEST_CASE("perturbed exponential instance") {
  for (int n = 2; n <= 6; ++n) {
    FedexInstance inst = perturbed_exponential(n);
    CHECK(validate(inst).empty());
    CHECK(inst.v_max == 1 << n);
    CurveStack st = build_curve_stack(inst);
    for (int i = 2; i <= n; ++i) {
      CHECK(argmax(st.day(i)) == inst.v_max);
      CHECK(argmax(st.day(i), TieBreak::largest) == inst.v_max);
    }
  }
  CHECK(menu_complexity(fiat_optimal(build_curve_stack(perturbed_exponential(4)))).total == 15);
  CHECK_THROWS_AS(perturbed_exponential(9), std::out_of_range);
}

TEST_CASE("three-day regular example") {
  FedexInstance inst = regular_three_day(frac(1, 100), Rat(15));
  CHECK(validate(inst).empty());
  CHECK(inst.value_scale == frac(1, 100));
  CHECK(inst.q == std::vector<Rat>{frac(10, 21), frac(10, 21), frac(1, 21)});
  CurveStack st = build_curve_stack(inst);
  Rat h = inst.value_scale;
  CHECK(abs_rat(st.r(3) * h - 5) <= 2 * h);
  CHECK(abs_rat(st.r(1) * h - frac(107, 100)) <= frac(5, 100));
  const Interval* I = st.ironed(2).interval_containing(st.r(1));
  REQUIRE(I != nullptr);
  CHECK(abs_rat(I->lo * h - frac(245, 1000)) <= frac(5, 100));
  CHECK(abs_rat(I->hi * h - frac(279, 100)) <= frac(5, 100));
  CHECK(fiat_optimal(st).day(2).size() >= 2);
  CHECK_THROWS_AS(regular_three_day(frac(1, 5), Rat(15)), std::invalid_argument);
  CHECK_THROWS_AS(regular_three_day(frac(1, 100), Rat(10)), std::invalid_argument);
}
