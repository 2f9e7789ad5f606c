#pragma once

#include <utility>
#include <vector>

#include "fedex/instance.hpp"
#include "fedex/rational.hpp"

namespace fedex {

struct RevenueCurve {
  std::vector<Rat> values;  // values[v], v = 0..domain_max

  int domain_max() const { return static_cast<int>(values.size()) - 1; }
  const Rat& operator[](int v) const { return values[v]; }
  bool operator==(const RevenueCurve&) const = default;
};

struct Interval {
  int lo = 0;
  int hi = 0;
  bool operator==(const Interval&) const = default;
};

struct IronedCurve {
  RevenueCurve base;
  std::vector<int> hull_vertices;  // strict corners of the envelope, collinear runs merged
  std::vector<Rat> envelope;       // envelope sampled at every grid point
  std::vector<Interval> ironed_intervals;

  int domain_max() const { return base.domain_max(); }
  bool ironed_at(int v) const { return envelope[v] != base.values[v]; }
  // Interval with lo < v < hi, if any.
  const Interval* interval_containing(int v) const;
};

enum class TieBreak { smallest, largest };

struct CurveStack {
  TieBreak tie = TieBreak::smallest;
  std::vector<RevenueCurve> day_curves;  // R_i
  std::vector<RevenueCurve> R_geq;       // R_{>=i}
  std::vector<IronedCurve> R_geq_ironed; // envelope of R_{>=i}
  std::vector<int> r_geq;                // maximizer of R_{>=i}

  int n() const { return static_cast<int>(R_geq.size()); }
  const RevenueCurve& day(int i) const { return day_curves[i - 1]; }
  const RevenueCurve& geq(int i) const { return R_geq[i - 1]; }
  const IronedCurve& ironed(int i) const { return R_geq_ironed[i - 1]; }
  int r(int i) const { return r_geq[i - 1]; }
  const Rat& opt() const { return R_geq[0].values[r_geq[0]]; }
};

RevenueCurve day_revenue_curve(const FedexInstance& inst, int day);

// v f(v) - (1 - F(v)), computed from the pmf. Equals (R(v) - R(v+1)) / q_day.
Rat virtual_value(const FedexInstance& inst, int day, int v);

IronedCurve iron(const RevenueCurve& curve);

Rat evaluate_envelope(const IronedCurve& ic, const Rat& x);

int argmax(const RevenueCurve& curve, TieBreak tie = TieBreak::smallest);

CurveStack build_curve_stack(const FedexInstance& inst, TieBreak tie = TieBreak::smallest);

}  // namespace fedex
