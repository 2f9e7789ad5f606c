#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fedex {

// Exact rational scalar. gmpxx uses expression templates, so results should be
// bound to a named Rat rather than `auto`.
using Rat = mpq_class;

// Accepts "p/q", integers and plain or scientific decimals ("0.25", "-3e-2").
// Throws std::invalid_argument on anything else or on a zero denominator.
Rat parse_rat(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise, always fully reduced.
std::string to_string(const Rat& x);

// Shortest decimal that round-trips through double.
std::string to_decimal(const Rat& x);

double to_double(const Rat& x);

// Exact value of a finite double.
Rat from_double(double x);

mpz_class floor_rat(const Rat& x);
mpz_class ceil_rat(const Rat& x);

// Smallest c >= 0 with 2^c >= x; 0 when x <= 1.
int ceil_log2(const Rat& x);

// Largest multiple of 2^-bits that is <= x.
Rat floor_dyadic(const Rat& x, unsigned bits);

// p/q in lowest terms; the two-argument gmpxx constructor does not reduce.
inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline int to_int(const Rat& x) { return static_cast<int>(x.get_num().get_si()); }

}  // namespace fedex
