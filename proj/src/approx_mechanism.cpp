#include "fedex/approx_mechanism.hpp"

#include <algorithm>
#include <stdexcept>

#include "fedex/verify.hpp"

namespace fedex {

AnchorSet augment_anchors(const IronedCurve& ic, const std::vector<Rat>& X) {
  AnchorSet out;
  for (const auto& x : X) {
    if (x < 0 || x > ic.domain_max()) throw std::out_of_range("anchor " + to_string(x) + " outside the curve domain");
    int lo = static_cast<int>(floor_rat(x).get_si());
    int hi = static_cast<int>(ceil_rat(x).get_si());
    while (lo > 0 && ic.ironed_at(lo)) --lo;
    while (hi < ic.domain_max() && ic.ironed_at(hi)) ++hi;
    out.provenance.push_back({x, lo, hi});
    out.points.push_back(lo);
    out.points.push_back(hi);
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

PriceMass snap_day(const PriceMass& pm, const AnchorSet& anchors) {
  const auto& a = anchors.points;
  std::vector<PriceAtom> out;
  for (const auto& atom : pm.atoms()) {
    if (a.empty() || atom.price > a.back() || atom.price < a.front())
      throw std::invalid_argument("atom at " + to_string(atom.price) + " lies outside the anchors");
    auto it = std::lower_bound(a.begin(), a.end(), atom.price, [](int v, const Rat& p) { return v < p; });
    if (*it == atom.price) {
      out.push_back(atom);
      continue;
    }
    int hi = *it, lo = *(it - 1);
    Rat w_lo = (hi - atom.price) / (hi - lo);
    out.push_back({Rat(lo), atom.mass * w_lo});
    out.push_back({Rat(hi), atom.mass * (1 - w_lo)});
  }
  return PriceMass(std::move(out));
}

std::vector<AuditViolation> downward_ic_audit(const PriceMass& before, const PriceMass& after, int v_max) {
  std::vector<AuditViolation> out;
  auto utility = [](const PriceMass& pm, int x) {
    Rat u = 0;
    for (const auto& a : pm.atoms()) {
      if (a.price > x) break;
      u += (x - a.price) * a.mass;
    }
    return u;
  };
  for (int x = 0; x <= v_max; ++x) {
    Rat ub = utility(before, x), ua = utility(after, x);
    if (ua < ub) out.push_back({x, Rat(ub - ua)});
  }
  return out;
}

namespace {

Rat continuation_value(const PriceMass& pm, const RevenueCurve& geq) {
  Rat s = 0;
  for (const auto& a : pm.atoms()) s += a.mass * geq[to_int(a.price)];
  return s;
}

}  // namespace

std::pair<Mechanism, ApproxReport> approximate_mechanism(const FedexInstance& inst, const CurveStack& stack,
                                                         const Rat& eps, Scheme scheme) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1), got " + to_string(eps));
  const int n = stack.n();
  ApproxReport rep;
  rep.eps = eps;
  rep.opt = stack.opt();
  rep.fallback = rep.opt < 1;
  const Scheme used = rep.fallback ? Scheme::level : scheme;
  rep.scheme = scheme_name(used);
  const Rat param = rep.fallback ? Rat(eps / n) : Rat(eps / (2 * n));

  Mechanism mech;
  Rat total_loss = 0;
  int sum_k = 0;
  for (int i = 1; i <= n; ++i) {
    const IronedCurve& ic = stack.ironed(i);
    const int r = stack.r(i);
    ConcavePL g = ConcavePL::from_ironed(ic, r);
    const Rat top = ic.envelope[r];

    DayApprox d;
    d.day = i;
    d.r = r;
    d.eps_i = rep.fallback ? Rat(param * top) : Rat(param * (1 + top));
    d.eps_param = used == Scheme::greedy ? d.eps_i : param;
    PolygonApprox pa = run_scheme(used, g, d.eps_param);
    // Collapsing collinear points leaves the interpolant unchanged.
    std::vector<Rat> X = collapse_collinear(g, pa.X);
    d.scheme = pa.scheme;
    d.k = static_cast<int>(X.size());
    d.k_raw = static_cast<int>(pa.X.size());
    d.certified_error = pa.certified_error;
    d.budget = pa.budget;
    d.budget_ok = pa.collapsed_size <= pa.budget + 1e-9;
    sum_k += d.k;

    AnchorSet anchors = augment_anchors(ic, X);
    std::vector<Rat> ax(anchors.points.begin(), anchors.points.end());
    d.anchors = static_cast<int>(ax.size());
    d.anchor_error = max_gap(g, ax);

    if (i == 1) {
      mech.days.push_back(PriceMass::point(Rat(r)));
    } else {
      PriceMass pushed = push_forward(mech.days.back(), ic, r);
      PriceMass snapped = snap_day(pushed, anchors);
      d.loss = continuation_value(pushed, stack.geq(i)) - continuation_value(snapped, stack.geq(i));
      d.audit_ok = downward_ic_audit(pushed, snapped, inst.v_max).empty();
      mech.days.push_back(std::move(snapped));
    }
    total_loss += d.loss;
    d.atoms = static_cast<int>(mech.days.back().size());
    rep.complexity += d.atoms;
    rep.days.push_back(std::move(d));
  }
  rep.complexity_bound = 2 * sum_k;
  rep.revenue = revenue_direct(assign_types(mech, inst.v_max), inst);
  rep.revenue_ok = rep.revenue >= (1 - eps) * rep.opt;
  rep.accounting_ok = rep.revenue == rep.opt - total_loss;
  return {std::move(mech), std::move(rep)};
}

}  // namespace fedex
