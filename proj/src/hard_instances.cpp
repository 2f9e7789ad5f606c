#include "fedex/hard_instances.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fedex {

namespace {

Rat rat_pow(const Rat& b, int e) {
  Rat r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

void claim(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("construction claim failed: " + what);
}

}  // namespace

LbaParams::LbaParams(int n_) : n(n_), C(frac(1, 2)), v_max(5 * n_) {
  if (n < 4) throw std::invalid_argument("lba construction needs n >= 4");
  lambda = 1 + frac(1, 4L * n);
  const Rat inv = 1 / lambda;
  S.resize(n + 2);
  S[0] = n;
  Rat acc = 0, p = 1;  // p = lambda^-j
  for (int i = 1; i <= n + 1; ++i) {
    acc += p;
    p *= inv;
    S[i] = n + acc;
  }
  beta.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    beta[i] = (frac(3L * n - i, 2) - Rat(n - i) * rat_pow(inv, i) + S[i]) / (3 * n + i);

  for (int i = 0; i <= n; ++i) claim(rat_pow(inv, i) > frac(3, 4), "lambda^-" + std::to_string(i) + " > 3/4");
  for (int i = 1; i < n; ++i) claim(beta[i] < beta[i + 1], "beta increasing at " + std::to_string(i));
  claim(beta[1] > frac(1, 2), "beta_1 > 1/2");
  claim(beta[1] == frac(1, 2) + frac(5, 1) / (4 * lambda * (3 * n + 1)), "beta_1 closed form");
  for (int i = 1; i <= n; ++i) claim(beta[i] <= frac(3, 4), "beta_" + std::to_string(i) + " <= 3/4");
  for (int i = 1; i < n; ++i)
    claim(S[i] / (n + i) >= S[i + 1] / (n + i + 1), "S_i/(n+i) non-increasing at " + std::to_string(i));
  for (int i = 1; i <= n; ++i) claim(beta[i] <= S[i] / (n + i), "beta_i <= S_i/(n+i) at " + std::to_string(i));
}

BitSeqParams bit_seq_params(int n, bool perturbed) {
  BitSeqParams p;
  p.n = n;
  p.perturbed = perturbed;
  if (!perturbed) {
    p.v_max = (1 << n) - 1;
    p.eps = 1 / rat_pow(Rat(4), n);
  } else {
    p.v_max = 1 << n;
    p.eps = frac(1, 4L * p.v_max);
    p.delta = 1 / rat_pow(Rat(p.v_max), 10);
  }
  return p;
}

std::vector<Rat> dist_from_rev_sequence(const std::vector<Rat>& r, int v) {
  if (v < 1 || static_cast<int>(r.size()) != v)
    throw std::invalid_argument("sequence must have exactly v = " + std::to_string(v) + " entries");
  if (r[0] != 1) throw std::invalid_argument("r_1 must be 1, got " + to_string(r[0]));
  const Rat limit = frac(1, 2L * v);
  for (int i = 1; i < v; ++i)
    if (abs_rat(r[i] - r[i - 1]) >= limit)
      throw std::invalid_argument("|r_" + std::to_string(i + 1) + " - r_" + std::to_string(i) + "| = " +
                                  to_string(abs_rat(r[i] - r[i - 1])) + " is not below 1/(2v)");
  // F(i) = 1 - r_{i+1}/(i+1), with r_{v+1} = 0.
  std::vector<Rat> F(v + 1);
  for (int i = 0; i <= v; ++i) F[i] = i < v ? Rat(1 - r[i] / (i + 1)) : Rat(1);
  std::vector<Rat> pmf(v + 1);
  pmf[0] = F[0];
  for (int i = 1; i <= v; ++i) pmf[i] = F[i] - F[i - 1];
  for (int i = 0; i <= v; ++i)
    if (pmf[i] < 0) throw std::invalid_argument("sequence yields negative mass at " + std::to_string(i));
  return pmf;
}

std::vector<Rat> bit_revenue_sequence(int n, int m, int v, const Rat& eps) {
  if (m < 1 || m > n) throw std::out_of_range("pattern index outside 1..n");
  std::vector<Rat> r{Rat(1)};
  for (long j = 1; j < v; ++j) {
    Rat s;
    if (m == n) {
      s = eps * (2 * bit(j, n) - 1);
    } else {
      int low_clear = 1;
      for (int k = 1; k < m; ++k) low_clear *= 1 - bit(j, k);
      s = eps * ((1 - 2 * bit(j, m + 1)) * bit(j, m) * low_clear);
    }
    r.push_back(r.back() - s);
  }
  return r;
}

FedexInstance exponential_instance(int n, int cap) {
  if (n < 2 || n > cap) throw std::out_of_range("exponential instance needs 2 <= n <= " + std::to_string(cap));
  BitSeqParams p = bit_seq_params(n, false);
  FedexInstance inst;
  inst.n = n;
  inst.v_max = p.v_max;
  inst.q.assign(n, frac(1, n));
  for (int i = 1; i <= n; ++i)
    inst.pmf.push_back(dist_from_rev_sequence(bit_revenue_sequence(n, n + 1 - i, p.v_max, p.eps), p.v_max));
  require_valid(inst);
  return inst;
}

FedexInstance perturbed_exponential(int n, int cap) {
  if (n < 2 || n > cap) throw std::out_of_range("perturbed instance needs 2 <= n <= " + std::to_string(cap));
  BitSeqParams plain = bit_seq_params(n, false);
  BitSeqParams p = bit_seq_params(n, true);
  const int v = p.v_max;
  FedexInstance inst;
  inst.n = n;
  inst.v_max = v;
  inst.q.assign(n, frac(1, n));
  auto day1 = dist_from_rev_sequence(bit_revenue_sequence(n, n, plain.v_max, plain.eps), plain.v_max);
  day1.emplace_back(0);
  inst.pmf.push_back(std::move(day1));
  for (int i = 2; i <= n; ++i) {
    auto r = bit_revenue_sequence(n, n + 1 - i, v, Rat(p.eps / 2));
    // Strictly concave term vanishing at j = 1 and peaking at j = v.
    for (int j = 1; j <= v; ++j) r[j - 1] += p.delta * (static_cast<long>(j) * (2L * v - j) - (2L * v - 1));
    inst.pmf.push_back(dist_from_rev_sequence(r, v));
  }
  require_valid(inst);
  return inst;
}

FedexInstance lba_instance(int n) {
  LbaParams p(n);
  FedexInstance inst;
  inst.n = n;
  inst.v_max = p.v_max;
  inst.q.assign(n, frac(1, n));
  for (int i = 1; i <= n; ++i) {
    // G(x) = Pr[X <= x] at integers.
    std::vector<Rat> G(p.v_max + 1);
    for (int x = 0; x <= p.v_max; ++x) {
      if (x <= n - 1)
        G[x] = 0;
      else if (x <= n + i - 1)
        G[x] = 1 - p.S[x - n + 1] / (x + 1);
      else if (x <= 3 * n + i - 1)
        G[x] = 1 - p.beta[i];
      else
        G[x] = 1;
    }
    std::vector<Rat> pmf(p.v_max + 1);
    pmf[0] = G[0];
    for (int x = 1; x <= p.v_max; ++x) pmf[x] = G[x] - G[x - 1];
    inst.pmf.push_back(std::move(pmf));
  }
  require_valid(inst);
  return inst;
}

namespace {

void check_lba_args(const LbaParams& p, int i, const Rat& x) {
  if (i < 1 || i > p.n) throw std::out_of_range("day outside 1..n");
  if (x < 0 || x > p.v_max) throw std::out_of_range("x outside [0, 5n]");
}

}  // namespace

Rat lba_closed_R(const LbaParams& p, int i, const Rat& x) {
  check_lba_args(p, i, x);
  const int n = p.n;
  const Rat inv = 1 / p.lambda;
  if (x <= n) return x + (n - i) * x;
  for (int k = 1; k <= i; ++k)
    if (x <= n + k) return p.S[k] / (n + k) * x + (n - i) * ((x - n - k + 1) * rat_pow(inv, k - 1) + p.S[k - 1]);
  if (x <= n + i + 1) return p.beta[i] * x + (n - i) * ((x - n - i) * rat_pow(inv, i) + p.S[i]);
  if (x <= 3 * n + i) return p.beta[i] * x + (n - i) * (p.C * (x - n - i - 1) + p.S[i + 1]);
  if (x <= 3 * n + i + 1) return (n - i) * (p.C * (x - n - i - 1) + p.S[i + 1]);
  return (n - i) * (2 * n * p.C + p.S[i + 1]);
}

Rat lba_closed_Rtilde(const LbaParams& p, int i, const Rat& x) {
  check_lba_args(p, i, x);
  const int n = p.n;
  const Rat inv = 1 / p.lambda;
  if (x <= n) return (n + 1 - i) * x;
  for (int k = 1; k <= i; ++k)
    if (x <= n + k) return (n + 1 - i) * ((x - n - k + 1) * rat_pow(inv, k - 1) + p.S[k - 1]);
  if (x <= 3 * n + i) return (n + 1 - i) * (p.C * (x - n - i) + p.S[i]);
  return (n - i) * (2 * n * p.C + p.S[i + 1]) + ((n - i) * p.C - p.beta[i] * (3 * n + i)) / (2 * n - i) * (x - 5 * n);
}

FedexInstance regular_three_day(const Rat& grid_step, const Rat& v_cap) {
  if (grid_step <= 0 || grid_step > frac(1, 10)) throw std::invalid_argument("grid step must lie in (0, 0.1]");
  if (v_cap < 15) throw std::invalid_argument("value cap must be at least 15");
  Rat cells = v_cap / grid_step;
  if (cells.get_den() != 1) throw std::invalid_argument("value cap must be a multiple of the grid step");
  const int K = static_cast<int>(cells.get_num().get_si());
  const double h = to_double(grid_step);
  const double rates[3] = {1.0, 5.0, 0.2};

  FedexInstance inst;
  inst.n = 3;
  inst.v_max = K;
  inst.q = {frac(10, 21), frac(10, 21), frac(1, 21)};
  inst.value_scale = grid_step;
  for (double rate : rates) {
    std::vector<Rat> F(K + 1);
    for (int k = 0; k <= K; ++k) F[k] = from_double(-std::expm1(-rate * (k * h)));
    std::vector<Rat> pmf(K + 1);
    for (int k = 0; k < K; ++k) pmf[k] = F[k + 1] - F[k];
    pmf[K] = 1 - F[K];
    inst.pmf.push_back(std::move(pmf));
  }
  require_valid(inst);
  return inst;
}

}  // namespace fedex
