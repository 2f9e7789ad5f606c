#include "fedex/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fedex {

namespace {

Rat slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.x - a.x); }

Rat pow2(int e) {
  mpz_class p = 1;
  p <<= static_cast<unsigned>(e);
  return Rat(p);
}

// Greedy steps stop at the largest multiple of 2^-kStepBits below the exact
// farthest point, which keeps denominators from compounding across steps.
constexpr unsigned kStepBits = 40;

}  // namespace

ConcavePL::ConcavePL(std::vector<Point> pts) {
  if (pts.empty()) throw std::invalid_argument("piecewise-linear function needs at least one point");
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (!(pts[k - 1].x < pts[k].x)) throw std::invalid_argument("breakpoints must have increasing x");
  for (std::size_t k = 2; k < pts.size(); ++k)
    if (slope(pts[k - 1], pts[k]) > slope(pts[k - 2], pts[k - 1]))
      throw std::invalid_argument("function is not concave at x=" + to_string(pts[k - 1].x));
  for (auto& p : pts) {
    while (pts_.size() >= 2 && slope(pts_[pts_.size() - 2], pts_.back()) == slope(pts_.back(), p)) pts_.pop_back();
    pts_.push_back(std::move(p));
  }
}

ConcavePL ConcavePL::hull_of(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::vector<Point> h;
  for (auto& p : pts) {
    if (!h.empty() && h.back().x == p.x) throw std::invalid_argument("duplicate x in point set");
    while (h.size() >= 2 && slope(h[h.size() - 2], h.back()) <= slope(h.back(), p)) h.pop_back();
    h.push_back(std::move(p));
  }
  return ConcavePL(std::move(h));
}

ConcavePL ConcavePL::from_ironed(const IronedCurve& ic, int upto) {
  if (upto < 0 || upto > ic.domain_max()) throw std::out_of_range("restriction outside curve domain");
  std::vector<Point> pts;
  for (int v : ic.hull_vertices) {
    if (v >= upto) break;
    pts.push_back({Rat(v), ic.base[v]});
  }
  pts.push_back({Rat(upto), ic.envelope[upto]});
  return ConcavePL(std::move(pts));
}

std::size_t ConcavePL::segment_index(const Rat& x) const {
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x, [](const Rat& a, const Point& p) { return a < p.x; });
  std::size_t s = static_cast<std::size_t>(it - pts_.begin());
  s = s == 0 ? 0 : s - 1;
  return std::min(s, pts_.size() - 2);
}

Rat ConcavePL::operator()(const Rat& x) const {
  if (x < lo() || x > hi()) throw std::out_of_range("x=" + to_string(x) + " outside [" + to_string(lo()) + ", " + to_string(hi()) + "]");
  if (pts_.size() == 1) return pts_[0].y;
  std::size_t s = segment_index(x);
  const Point &a = pts_[s], &b = pts_[s + 1];
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Rat ConcavePL::right_slope(const Rat& x) const {
  if (pts_.size() == 1) return 0;
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x, [](const Rat& a, const Point& p) { return a < p.x; });
  std::size_t s = it == pts_.begin() ? 0 : static_cast<std::size_t>(it - pts_.begin()) - 1;
  s = std::min(s, pts_.size() - 2);
  return slope(pts_[s], pts_[s + 1]);
}

Rat ConcavePL::left_slope(const Rat& x) const {
  if (pts_.size() == 1) return 0;
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x, [](const Point& p, const Rat& a) { return p.x < a; });
  std::size_t s = static_cast<std::size_t>(it - pts_.begin());
  s = s == 0 ? 0 : s - 1;
  s = std::min(s, pts_.size() - 2);
  return slope(pts_[s], pts_[s + 1]);
}

ConcavePL ConcavePL::restrict(const Rat& a, const Rat& b) const {
  if (a < lo() || b > hi() || b < a) throw std::out_of_range("bad restriction interval");
  std::vector<Point> pts{{a, (*this)(a)}};
  for (const auto& p : pts_)
    if (a < p.x && p.x < b) pts.push_back(p);
  if (b != a) pts.push_back({b, (*this)(b)});
  return ConcavePL(std::move(pts));
}

bool ConcavePL::non_decreasing() const {
  return pts_.size() == 1 || slope(pts_[pts_.size() - 2], pts_.back()) >= 0;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "greedy") return Scheme::greedy;
  if (s == "dyadic") return Scheme::dyadic;
  if (s == "level") return Scheme::level;
  if (s == "best") return Scheme::best;
  throw std::invalid_argument("unknown scheme \"" + s + "\"");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::greedy: return "greedy";
    case Scheme::dyadic: return "dyadic";
    case Scheme::level: return "level";
    case Scheme::best: return "best";
  }
  return "?";
}

Rat interpolate(const ConcavePL& f, const std::vector<Rat>& X, const Rat& x) {
  if (X.empty() || x < X.front() || x > X.back()) throw std::out_of_range("x outside the span of X");
  if (X.size() == 1) return f(X[0]);
  auto it = std::upper_bound(X.begin(), X.end(), x);
  std::size_t s = static_cast<std::size_t>(it - X.begin());
  s = std::min(s == 0 ? std::size_t{0} : s - 1, X.size() - 2);
  const Rat &a = X[s], &b = X[s + 1];
  Rat fa = f(a), fb = f(b);
  return fa + (fb - fa) * (x - a) / (b - a);
}

Rat max_gap(const ConcavePL& f, const std::vector<Rat>& X) {
  if (X.empty() || X.front() != f.lo() || X.back() != f.hi())
    throw std::invalid_argument("X must start and end at the domain end points");
  Rat best = 0;
  auto probe = [&](const Rat& x) {
    Rat g = f(x) - interpolate(f, X, x);
    if (g < 0) throw std::logic_error("interpolant exceeds f at x=" + to_string(x));
    if (g > best) best = g;
  };
  for (const auto& p : f.points()) probe(p.x);
  for (const auto& x : X) probe(x);
  return best;
}

std::vector<Rat> collapse_collinear(const ConcavePL& f, const std::vector<Rat>& X) {
  std::vector<Rat> out;
  std::vector<Rat> fy;
  for (const auto& x : X) {
    Rat y = f(x);
    while (out.size() >= 2) {
      const Rat &x0 = out[out.size() - 2], &x1 = out.back();
      const Rat &y0 = fy[fy.size() - 2], &y1 = fy.back();
      if ((y1 - y0) * (x - x1) != (y - y1) * (x1 - x0)) break;
      out.pop_back();
      fy.pop_back();
    }
    out.push_back(x);
    fy.push_back(y);
  }
  return out;
}

double greedy_budget(const ConcavePL& f, const Rat& eps) {
  double L = to_double(f.hi() - f.lo());
  double delta = to_double(f.right_slope(f.lo()) - f.left_slope(f.hi()));
  return 3.0 + std::sqrt(9.0 * L * delta / (8.0 * to_double(eps)));
}

double dyadic_budget(const ConcavePL& f, const Rat& eps) {
  double c = ceil_log2(f.hi());
  double e = to_double(eps);
  return 3.0 * (1.0 + c) + std::sqrt(9.0 / (8.0 * e)) + std::sqrt((18.0 / 8.0) * c / e);
}

double level_budget(const Rat& eps) { return to_double(Rat(floor_rat(1 / eps))) + 2.0; }

namespace {

// Farthest-extension greedy on [a, b] with additive budget eps >= 0.
std::vector<Rat> greedy_points(const ConcavePL& f, const Rat& a, const Rat& b, const Rat& eps) {
  std::vector<Rat> X{a};
  if (a == b) return X;
  std::vector<Rat> bp, fv;
  for (const auto& p : f.points())
    if (a < p.x && p.x < b) {
      bp.push_back(p.x);
      fv.push_back(p.y);
    }
  bp.push_back(b);
  fv.push_back(f(b));
  const std::size_t m = bp.size();

  Rat cur = a, fcur = f(a);
  std::size_t start = 0;  // first breakpoint strictly right of cur
  auto chord_ok = [&](std::size_t k) {
    Rat s = (fv[k] - fcur) / (bp[k] - cur);
    for (std::size_t j = start; j < k; ++j)
      if (fv[j] - fcur - s * (bp[j] - cur) > eps) return false;
    return true;
  };
  for (;;) {
    std::size_t lo = start, hi = m - 1;
    if (chord_ok(hi)) {
      X.push_back(b);
      return X;
    }
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      (chord_ok(mid) ? lo : hi) = mid;
    }
    const std::size_t k = lo;
    // The chord slope from cur must stay >= s_star for every interior point
    // to be within eps.
    Rat s_star = (fv[start] - fcur - eps) / (bp[start] - cur);
    for (std::size_t j = start + 1; j <= k; ++j) {
      Rat s = (fv[j] - fcur - eps) / (bp[j] - cur);
      if (s > s_star) s_star = s;
    }
    Rat seg = (fv[k + 1] - fv[k]) / (bp[k + 1] - bp[k]);
    Rat t_exact = (fv[k] - seg * bp[k] - fcur + s_star * cur) / (s_star - seg);
    Rat t = floor_dyadic(t_exact, kStepBits);
    if (t < bp[k]) t = bp[k];
    fcur = fv[k] + seg * (t - bp[k]);
    cur = t;
    start = k + 1;
    X.push_back(t);
  }
}

void require_positive(const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive, got " + to_string(eps));
}

PolygonApprox finish(const ConcavePL& f, std::vector<Rat> X, std::string scheme, const Rat& eps, const Rat& bound,
                     double budget) {
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  PolygonApprox out;
  out.certified_error = max_gap(f, X);
  out.collapsed_size = static_cast<int>(collapse_collinear(f, X).size());
  out.X = std::move(X);
  out.scheme = std::move(scheme);
  out.eps = eps;
  out.bound = bound;
  out.budget = budget;
  return out;
}

void require_anchored(const ConcavePL& f) {
  if (f.lo() != 0) throw std::invalid_argument("domain must start at 0");
  if (f(0) != 0) throw std::invalid_argument("f(0) must be 0");
}

}  // namespace

PolygonApprox greedy_eps_approx(const ConcavePL& f, const Rat& eps) {
  require_positive(eps);
  return finish(f, greedy_points(f, f.lo(), f.hi(), eps), "greedy", eps, eps, greedy_budget(f, eps));
}

PolygonApprox dyadic_hybrid_approx(const ConcavePL& f, const Rat& eps) {
  require_positive(eps);
  require_anchored(f);
  if (f.right_slope(0) > 1) throw std::invalid_argument("dyadic scheme needs f'(0) <= 1");
  if (f.left_slope(f.hi()) < 0) throw std::invalid_argument("dyadic scheme needs f non-decreasing at the right end");
  const Rat& v = f.hi();
  const int c = ceil_log2(v);
  const Rat fv = f(v);
  std::vector<Rat> X = greedy_points(f, Rat(0), Rat(v / pow2(c)), eps);
  for (int i = c; i >= 1; --i) {
    auto part = greedy_points(f, Rat(v / pow2(i)), Rat(v / pow2(i - 1)), Rat(eps * fv));
    X.insert(X.end(), part.begin(), part.end());
  }
  return finish(f, std::move(X), "dyadic", eps, Rat(eps * (1 + fv)), dyadic_budget(f, eps));
}

PolygonApprox level_set_approx(const ConcavePL& f, const Rat& eps) {
  require_positive(eps);
  require_anchored(f);
  const auto& pts = f.points();
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (pts[k].y < pts[k - 1].y) throw std::invalid_argument("level-set scheme needs a non-decreasing f");
  const Rat fv = f(f.hi());
  const long K = floor_rat(1 / eps).get_si();
  std::vector<Rat> X;
  for (long i = 0; i <= K; ++i) {
    Rat target = Rat(i) * eps * fv;
    // First breakpoint reaching the target; the level point sits on the
    // segment ending there.
    auto it = std::lower_bound(pts.begin(), pts.end(), target, [](const Point& p, const Rat& t) { return p.y < t; });
    if (it == pts.end()) break;
    if (it == pts.begin() || it->y == target) {
      X.push_back(it->x);
      continue;
    }
    const Point &a = *(it - 1), &b = *it;
    X.push_back(a.x + (target - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  X.push_back(f.hi());
  return finish(f, std::move(X), "level", eps, Rat(eps * fv), level_budget(eps));
}

PolygonApprox hybrid_best(const ConcavePL& f, const Rat& eps) {
  PolygonApprox d = dyadic_hybrid_approx(f, eps);
  PolygonApprox l = level_set_approx(f, eps);
  // Both meet the hybrid bound eps * (1 + f(v)).
  l.bound = d.bound;
  return l.collapsed_size < d.collapsed_size ? l : d;
}

PolygonApprox run_scheme(Scheme s, const ConcavePL& f, const Rat& eps) {
  switch (s) {
    case Scheme::greedy: return greedy_eps_approx(f, eps);
    case Scheme::dyadic: return dyadic_hybrid_approx(f, eps);
    case Scheme::level: return level_set_approx(f, eps);
    case Scheme::best: return hybrid_best(f, eps);
  }
  throw std::invalid_argument("unknown scheme");
}

ConcavePL lpl(int k) {
  if (k < 2) throw std::invalid_argument("LPL_k needs k >= 2");
  std::vector<Point> pts{{Rat(0), Rat(0)}};
  for (int i = 1; i <= k; ++i) pts.push_back({Rat(3 * (pow2(i + 1) - 2)), Rat(6 * i)});
  return ConcavePL(std::move(pts));
}

std::vector<LplInterval> lpl_intervals(int k) {
  std::vector<LplInterval> out;
  for (int i = 2; i <= k; ++i) {
    Rat m = 3 * (pow2(i) - 2);
    out.push_back({i, Rat(m - pow2(i)), m, Rat(m + pow2(i))});
  }
  return out;
}

std::vector<int> lpl_interval_cover_check(const std::vector<Rat>& X, int k) {
  std::vector<int> missing;
  for (const auto& iv : lpl_intervals(k)) {
    auto it = std::lower_bound(X.begin(), X.end(), iv.lo);
    if (it == X.end() || *it > iv.hi) missing.push_back(iv.i);
  }
  return missing;
}

ConcavePL tangent_stitch(const ConcavePL& f, const std::vector<Rat>& X) {
  if (X.empty() || X.front() != f.lo() || X.back() != f.hi())
    throw std::invalid_argument("X must include both domain end points");
  for (std::size_t k = 1; k < X.size(); ++k)
    if (!(X[k - 1] < X[k])) throw std::invalid_argument("X must be strictly increasing");
  if (X.size() == 1) return f;

  struct Line {
    Rat x0, y0, s;
    Rat at(const Rat& x) const { return y0 + s * (x - x0); }
  };
  std::vector<Line> lines;  // in order of non-increasing slope
  for (std::size_t k = 0; k < X.size(); ++k) {
    Rat y = f(X[k]);
    if (k > 0) lines.push_back({X[k], y, f.left_slope(X[k])});
    if (k + 1 < X.size()) lines.push_back({X[k], y, f.right_slope(X[k])});
  }
  std::vector<Rat> cand(X);
  for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
    const Line &a = lines[k], &b = lines[k + 1];
    if (a.s == b.s) continue;
    Rat x = (b.y0 - b.s * b.x0 - a.y0 + a.s * a.x0) / (a.s - b.s);
    if (x > f.lo() && x < f.hi()) cand.push_back(x);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<Point> pts;
  for (const auto& x : cand) {
    Rat g = lines[0].at(x);
    for (const auto& l : lines) {
      Rat v = l.at(x);
      if (v < g) g = v;
    }
    pts.push_back({x, g});
  }
  return ConcavePL(std::move(pts));
}

DerivativeSum derivative_sum_bound(const ConcavePL& f) {
  if (f.lo() != 0) throw std::invalid_argument("domain must start at 0");
  if (f(0) < 0) throw std::invalid_argument("f must be nonnegative");
  if (f.left_slope(f.hi()) < 0) throw std::invalid_argument("f must be non-decreasing at the right end");
  DerivativeSum out;
  const Rat& v = f.hi();
  out.lhs = f(v);
  const int c = ceil_log2(v);
  for (int i = 0; i <= c; ++i) {
    Rat x = v / pow2(i);
    out.rhs += f.right_slope(x) * x / 2;
  }
  return out;
}

}  // namespace fedex
