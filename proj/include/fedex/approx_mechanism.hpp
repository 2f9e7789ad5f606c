#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fedex/instance.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/polygon.hpp"
#include "fedex/revenue_curves.hpp"

namespace fedex {

struct AnchorSet {
  struct Provenance {
    Rat x;
    int lo = 0;
    int hi = 0;
  };
  std::vector<int> points;  // non-ironed grid points, increasing
  std::vector<Provenance> provenance;
};

// Replaces each x by the nearest non-ironed grid points lo <= x <= hi.
AnchorSet augment_anchors(const IronedCurve& ic, const std::vector<Rat>& X);

// Splits each atom between the nearest anchors on either side. Throws if an
// atom lies above the largest anchor.
PriceMass snap_day(const PriceMass& pm, const AnchorSet& anchors);

struct AuditViolation {
  int x = 0;
  Rat shortfall;
};

// Utility dominance: for every grid x, sum_{v<=x}(x-v) after(v) >= the same sum for before.
std::vector<AuditViolation> downward_ic_audit(const PriceMass& before, const PriceMass& after, int v_max);

struct DayApprox {
  int day = 0;
  int r = 0;
  std::string scheme;
  Rat eps_param;       // eps handed to the polygon scheme
  Rat eps_i;           // per-day loss budget
  int k = 0;           // |X_i| after collapsing collinear points
  int k_raw = 0;       // |X_i| as produced by the scheme
  int anchors = 0;     // |X_i'|
  int atoms = 0;
  Rat certified_error; // of X_i
  Rat anchor_error;    // of X_i', re-certified
  Rat loss;            // drop in continuation revenue caused by the snap
  double budget = 0;
  bool budget_ok = true;
  bool audit_ok = true;
};

struct ApproxReport {
  Rat eps;
  std::string scheme;
  bool fallback = false;  // OPT < 1, so the level-set scheme with eps/n is used
  std::vector<DayApprox> days;
  Rat opt;
  Rat revenue;
  int complexity = 0;
  int complexity_bound = 0;  // 2 * sum |X_i|
  bool revenue_ok = false;   // revenue >= (1 - eps) OPT
  bool accounting_ok = false; // revenue == OPT - sum of losses
};

std::pair<Mechanism, ApproxReport> approximate_mechanism(const FedexInstance& inst, const CurveStack& stack,
                                                         const Rat& eps, Scheme scheme = Scheme::best);

}  // namespace fedex
