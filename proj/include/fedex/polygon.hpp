#pragma once

#include <string>
#include <vector>

#include "fedex/rational.hpp"
#include "fedex/revenue_curves.hpp"

namespace fedex {

struct Point {
  Rat x;
  Rat y;
  bool operator==(const Point&) const = default;
};

// Concave piecewise-linear function on [lo, hi]. Interior collinear points are
// dropped, so every stored interior point is a strict kink.
class ConcavePL {
 public:
  explicit ConcavePL(std::vector<Point> pts);

  // Upper concave envelope of arbitrary points (any order, distinct x).
  static ConcavePL hull_of(std::vector<Point> pts);
  // Envelope of an ironed curve on [0, upto].
  static ConcavePL from_ironed(const IronedCurve& ic, int upto);

  const std::vector<Point>& points() const { return pts_; }
  const Rat& lo() const { return pts_.front().x; }
  const Rat& hi() const { return pts_.back().x; }
  Rat operator()(const Rat& x) const;
  // One-sided slopes. At the left end both give the first slope and at the
  // right end both give the last one.
  Rat right_slope(const Rat& x) const;
  Rat left_slope(const Rat& x) const;
  ConcavePL restrict(const Rat& a, const Rat& b) const;
  int segments() const { return static_cast<int>(pts_.size()) - 1; }
  bool non_decreasing() const;

 private:
  std::size_t segment_index(const Rat& x) const;
  std::vector<Point> pts_;
};

enum class Scheme { greedy, dyadic, level, best };

Scheme parse_scheme(const std::string& s);
std::string scheme_name(Scheme s);

struct PolygonApprox {
  std::vector<Rat> X;
  Rat certified_error;
  Rat bound;          // the scheme's contractual error bound
  std::string scheme; // greedy | dyadic | level
  Rat eps;
  double budget = 0;  // closed-form bound on |X|
  int collapsed_size = 0;
};

// Value at x of the interpolant of f through X.
Rat interpolate(const ConcavePL& f, const std::vector<Rat>& X, const Rat& x);

// max_x f(x) - interpolant, evaluated at the union of f's and X's breakpoints.
// Throws if the interpolant ever exceeds f.
Rat max_gap(const ConcavePL& f, const std::vector<Rat>& X);

// X with interior points removed wherever the interpolant is straight across.
std::vector<Rat> collapse_collinear(const ConcavePL& f, const std::vector<Rat>& X);

double greedy_budget(const ConcavePL& f, const Rat& eps);
double dyadic_budget(const ConcavePL& f, const Rat& eps);
double level_budget(const Rat& eps);

PolygonApprox greedy_eps_approx(const ConcavePL& f, const Rat& eps);
PolygonApprox dyadic_hybrid_approx(const ConcavePL& f, const Rat& eps);
PolygonApprox level_set_approx(const ConcavePL& f, const Rat& eps);
PolygonApprox hybrid_best(const ConcavePL& f, const Rat& eps);
PolygonApprox run_scheme(Scheme s, const ConcavePL& f, const Rat& eps);

ConcavePL lpl(int k);

struct LplInterval {
  int i = 0;
  Rat lo, mid, hi;
};
// I_i for i = 2..k.
std::vector<LplInterval> lpl_intervals(int k);

// Indices i whose interval I_i contains no point of X.
std::vector<int> lpl_interval_cover_check(const std::vector<Rat>& X, int k);

ConcavePL tangent_stitch(const ConcavePL& f, const std::vector<Rat>& X);

struct DerivativeSum {
  Rat lhs;
  Rat rhs;
};
DerivativeSum derivative_sum_bound(const ConcavePL& f);

}  // namespace fedex
