#pragma once

#include <utility>
#include <vector>

#include "fedex/rational.hpp"
#include "fedex/revenue_curves.hpp"

namespace fedex {

struct PriceAtom {
  Rat price;
  Rat mass;
  bool operator==(const PriceAtom&) const = default;
};

// Distribution over posted prices for one day. Atoms are kept sorted by price,
// merged at equal prices, and free of zero masses.
class PriceMass {
 public:
  PriceMass() = default;
  explicit PriceMass(std::vector<PriceAtom> atoms);

  static PriceMass point(const Rat& price, const Rat& mass = 1);

  const std::vector<PriceAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  Rat total_mass() const;
  Rat max_price() const { return atoms_.back().price; }
  bool operator==(const PriceMass&) const = default;

 private:
  std::vector<PriceAtom> atoms_;
};

struct MenuOption {
  Rat prob;
  Rat payment;
  bool operator==(const MenuOption&) const = default;
};

struct Menu {
  std::vector<MenuOption> options;
  bool operator==(const Menu&) const = default;
};

struct AllocationCurve {
  std::vector<Rat> A;  // A[v] = allocation probability of value v

  Rat density(int v) const { return v == 0 ? A[0] : Rat(A[v] - A[v - 1]); }
  int jumps() const;
};

struct Mechanism {
  std::vector<PriceMass> days;

  int n() const { return static_cast<int>(days.size()); }
  const PriceMass& day(int i) const { return days[i - 1]; }
};

struct MenuComplexity {
  std::vector<int> per_day;
  int total = 0;
};

// Weights (on x, on y) of the convex combination that lands on p.
std::pair<Rat, Rat> split_in_interval(const Rat& p, const Rat& x, const Rat& y);

// One step of the optimal redistribution: where the day-(i-1) price mass goes on
// a day whose continuation curve is `next` with maximizer r.
PriceMass push_forward(const PriceMass& pm, const IronedCurve& next, int r);

Mechanism fiat_optimal(const CurveStack& stack);

Menu menu_from_prices(const PriceMass& pm);
PriceMass prices_from_menu(const Menu& m);

AllocationCurve allocation_curve(const PriceMass& pm, int v_max);

MenuComplexity menu_complexity(const Mechanism& mech);

// For every day i < n and every integer x <= min(n + i, v_max):
// a_{i+1}(x) >= a_i(x).
bool is_clean(const Mechanism& mech, int n, int v_max);

}  // namespace fedex
