#include "fedex/mechanism.hpp"

#include <algorithm>
#include <stdexcept>

namespace fedex {

PriceMass::PriceMass(std::vector<PriceAtom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const PriceAtom& a, const PriceAtom& b) { return a.price < b.price; });
  for (auto& a : atoms) {
    if (a.mass < 0) throw std::invalid_argument("negative mass at price " + to_string(a.price));
    if (a.mass == 0) continue;
    if (!atoms_.empty() && atoms_.back().price == a.price)
      atoms_.back().mass += a.mass;
    else
      atoms_.push_back(std::move(a));
  }
}

PriceMass PriceMass::point(const Rat& price, const Rat& mass) { return PriceMass({{price, mass}}); }

Rat PriceMass::total_mass() const {
  Rat s = 0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

int AllocationCurve::jumps() const {
  int c = 0;
  for (int v = 0; v < static_cast<int>(A.size()); ++v)
    if (density(v) != 0) ++c;
  return c;
}

std::pair<Rat, Rat> split_in_interval(const Rat& p, const Rat& x, const Rat& y) {
  if (!(x < p && p < y))
    throw std::invalid_argument(to_string(p) + " is not strictly inside [" + to_string(x) + ", " +
                                to_string(y) + "]");
  Rat wx = (y - p) / (y - x);
  return {wx, Rat(1 - wx)};
}

namespace {

// Nearest non-ironed grid points x <= p <= y of the envelope.
std::pair<int, int> touching_bracket(const IronedCurve& ic, const Rat& p) {
  int lo = static_cast<int>(floor_rat(p).get_si());
  int hi = static_cast<int>(ceil_rat(p).get_si());
  while (lo > 0 && ic.ironed_at(lo)) --lo;
  while (hi < ic.domain_max() && ic.ironed_at(hi)) ++hi;
  return {lo, hi};
}

}  // namespace

PriceMass push_forward(const PriceMass& pm, const IronedCurve& next, int r) {
  std::vector<PriceAtom> out;
  for (const auto& a : pm.atoms()) {
    if (a.price >= r) {
      out.push_back({Rat(r), a.mass});
      continue;
    }
    if (a.price < 0) throw std::invalid_argument("negative price " + to_string(a.price));
    auto [x, y] = touching_bracket(next, a.price);
    if (x == y) {
      out.push_back(a);
      continue;
    }
    auto [wx, wy] = split_in_interval(a.price, Rat(x), Rat(y));
    out.push_back({Rat(x), a.mass * wx});
    out.push_back({Rat(y), a.mass * wy});
  }
  return PriceMass(std::move(out));
}

Mechanism fiat_optimal(const CurveStack& stack) {
  Mechanism m;
  m.days.push_back(PriceMass::point(Rat(stack.r(1))));
  for (int i = 2; i <= stack.n(); ++i)
    m.days.push_back(push_forward(m.days.back(), stack.ironed(i), stack.r(i)));
  return m;
}

Menu menu_from_prices(const PriceMass& pm) {
  Menu m;
  Rat pi = 0, pay = 0;
  for (const auto& a : pm.atoms()) {
    pi += a.mass;
    pay += a.mass * a.price;
    m.options.push_back({pi, pay});
  }
  return m;
}

PriceMass prices_from_menu(const Menu& m) {
  std::vector<PriceAtom> atoms;
  Rat pi = 0, pay = 0;
  for (const auto& o : m.options) {
    if (o.prob <= pi) throw std::invalid_argument("menu allocation probabilities must increase");
    Rat mass = o.prob - pi;
    atoms.push_back({Rat((o.payment - pay) / mass), mass});
    pi = o.prob;
    pay = o.payment;
  }
  return PriceMass(std::move(atoms));
}

AllocationCurve allocation_curve(const PriceMass& pm, int v_max) {
  AllocationCurve c;
  c.A.assign(v_max + 1, Rat(0));
  const auto& atoms = pm.atoms();
  std::size_t k = 0;
  Rat acc = 0;
  for (int v = 0; v <= v_max; ++v) {
    while (k < atoms.size() && atoms[k].price <= v) acc += atoms[k++].mass;
    c.A[v] = acc;
  }
  return c;
}

MenuComplexity menu_complexity(const Mechanism& mech) {
  MenuComplexity mc;
  for (const auto& d : mech.days) {
    mc.per_day.push_back(static_cast<int>(d.size()));
    mc.total += static_cast<int>(d.size());
  }
  return mc;
}

bool is_clean(const Mechanism& mech, int n, int v_max) {
  for (int i = 1; i < mech.n(); ++i) {
    auto a = allocation_curve(mech.day(i), v_max);
    auto b = allocation_curve(mech.day(i + 1), v_max);
    for (int x = 0; x <= std::min(n + i, v_max); ++x)
      if (b.density(x) < a.density(x)) return false;
  }
  return true;
}

}  // namespace fedex
