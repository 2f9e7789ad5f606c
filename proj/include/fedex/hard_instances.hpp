#pragma once

#include <vector>

#include "fedex/instance.hpp"
#include "fedex/rational.hpp"

namespace fedex {

// Parameters of the clean lower-bound construction with n days.
struct LbaParams {
  explicit LbaParams(int n);  // throws std::logic_error if a structural claim fails

  int n;
  Rat lambda;             // 1 + 1/(4n)
  std::vector<Rat> S;     // S[0..n+1]
  std::vector<Rat> beta;  // beta[0..n]
  Rat C;                  // 1/2
  int v_max;              // 5n
};

struct BitSeqParams {
  int n = 0;
  bool perturbed = false;
  int v_max = 0;  // 2^n - 1 plain, 2^n perturbed
  Rat eps;        // size of the revenue steps
  Rat delta;      // weight of the concave term, perturbed days >= 2 only
};

BitSeqParams bit_seq_params(int n, bool perturbed);

// i-th least significant bit of j, i >= 1.
inline int bit(long j, int i) { return static_cast<int>((j >> (i - 1)) & 1); }

// r = (r_1, ..., r_v). Returns the pmf on {0..v} whose revenue curve v*Pr[X >= v]
// equals r_v at every v in 1..v.
std::vector<Rat> dist_from_rev_sequence(const std::vector<Rat>& r, int v);

// Revenue sequence r_1..r_v driven by bit pattern m (1 <= m <= n) with step eps.
std::vector<Rat> bit_revenue_sequence(int n, int m, int v, const Rat& eps);

FedexInstance exponential_instance(int n, int cap = 10);
FedexInstance perturbed_exponential(int n, int cap = 8);

FedexInstance lba_instance(int n);

// Closed forms of R_{>=i} and its envelope with the uniform q divided out.
Rat lba_closed_R(const LbaParams& p, int i, const Rat& x);
Rat lba_closed_Rtilde(const LbaParams& p, int i, const Rat& x);

// Three days with exponential marginals of rates 1, 5 and 1/5 and
// q = (10/21, 10/21, 1/21), discretized on a grid of step grid_step up to
// v_cap. Each CDF sample is the exact value of its double, so the pmf sums to
// 1 exactly; grid point k stands for the value k * grid_step.
FedexInstance regular_three_day(const Rat& grid_step, const Rat& v_cap);

}  // namespace fedex
