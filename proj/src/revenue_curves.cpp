#include "fedex/revenue_curves.hpp"

#include <algorithm>
#include <stdexcept>

namespace fedex {

const Interval* IronedCurve::interval_containing(int v) const {
  auto it = std::upper_bound(ironed_intervals.begin(), ironed_intervals.end(), v,
                             [](int x, const Interval& iv) { return x < iv.hi; });
  if (it != ironed_intervals.end() && it->lo < v && v < it->hi) return &*it;
  return nullptr;
}

RevenueCurve day_revenue_curve(const FedexInstance& inst, int day) {
  check_day(inst, day);
  const auto& f = inst.pmf[day - 1];
  const Rat& q = inst.q[day - 1];
  RevenueCurve c;
  c.values.assign(f.size(), Rat(0));
  Rat tail = 1;  // Pr[X >= v]
  for (std::size_t v = 1; v < f.size(); ++v) {
    tail -= f[v - 1];
    c.values[v] = q * Rat(static_cast<long>(v)) * tail;
  }
  return c;
}

Rat virtual_value(const FedexInstance& inst, int day, int v) {
  check_day(inst, day);
  if (v < 1 || v > inst.v_max - 1)
    throw std::out_of_range("v=" + std::to_string(v) + " outside 1.." + std::to_string(inst.v_max - 1));
  auto cdf = marginal_cdf(inst, day);
  return Rat(v) * inst.pmf[day - 1][v] - (1 - cdf[v]);
}

IronedCurve iron(const RevenueCurve& curve) {
  IronedCurve ic;
  ic.base = curve;
  const auto& y = curve.values;
  const int m = curve.domain_max();
  if (m < 0) throw std::invalid_argument("empty curve");

  // Upper hull; a middle point on or below the chord is dropped, so collinear
  // runs collapse to their end points.
  auto& h = ic.hull_vertices;
  for (int v = 0; v <= m; ++v) {
    while (h.size() >= 2) {
      int a = h[h.size() - 2], b = h.back();
      Rat lhs = (y[b] - y[a]) * (v - a);
      Rat rhs = (y[v] - y[a]) * (b - a);
      if (lhs > rhs) break;
      h.pop_back();
    }
    h.push_back(v);
  }

  ic.envelope.assign(m + 1, Rat(0));
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    int a = h[k], b = h[k + 1];
    Rat slope = (y[b] - y[a]) / (b - a);
    for (int v = a; v < b; ++v) ic.envelope[v] = y[a] + slope * (v - a);
  }
  ic.envelope[m] = y[m];

  for (int v = 1; v < m; ++v) {
    if (!ic.ironed_at(v)) continue;
    int lo = v - 1;
    while (v < m && ic.ironed_at(v)) ++v;
    ic.ironed_intervals.push_back({lo, v});
  }
  return ic;
}

Rat evaluate_envelope(const IronedCurve& ic, const Rat& x) {
  if (x < 0 || x > ic.domain_max()) throw std::out_of_range("x=" + to_string(x) + " outside envelope domain");
  const auto& h = ic.hull_vertices;
  const auto& y = ic.base.values;
  // First vertex strictly greater than x.
  auto it = std::upper_bound(h.begin(), h.end(), x, [](const Rat& a, int b) { return a < b; });
  if (it == h.end()) return y[h.back()];
  int b = *it, a = *(it - 1);
  return y[a] + (y[b] - y[a]) * (x - a) / (b - a);
}

int argmax(const RevenueCurve& curve, TieBreak tie) {
  int best = 0;
  for (int v = 1; v <= curve.domain_max(); ++v) {
    int c = cmp(curve.values[v], curve.values[best]);
    if (c > 0 || (c == 0 && tie == TieBreak::largest)) best = v;
  }
  return best;
}

CurveStack build_curve_stack(const FedexInstance& inst, TieBreak tie) {
  require_valid(inst);
  CurveStack s;
  s.tie = tie;
  const int n = inst.n;
  s.day_curves.resize(n);
  s.R_geq.resize(n);
  s.R_geq_ironed.resize(n);
  s.r_geq.resize(n);
  for (int i = 1; i <= n; ++i) s.day_curves[i - 1] = day_revenue_curve(inst, i);
  for (int i = n; i >= 1; --i) {
    RevenueCurve& g = s.R_geq[i - 1];
    g = s.day_curves[i - 1];
    if (i < n) {
      const IronedCurve& next = s.R_geq_ironed[i];
      int r = s.r_geq[i];
      for (int v = 0; v <= inst.v_max; ++v) g.values[v] += next.envelope[std::min(v, r)];
    }
    s.R_geq_ironed[i - 1] = iron(g);
    s.r_geq[i - 1] = argmax(g, tie);
  }
  return s;
}

}  // namespace fedex
