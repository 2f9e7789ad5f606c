#include "fedex/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace fedex {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
}

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rat parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!exp_part.empty() && (exp_part[0] == '-' || exp_part[0] == '+')) {
      eneg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad(text);
    std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (eneg) exponent = -exponent;
  }
  std::string digits;
  long frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad(text);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(text);
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) bad(text);
    digits = std::string(s);
  }
  Rat r(mpz_class(digits, 10));
  long shift = exponent - frac;
  if (shift > 0) r *= pow10(shift);
  if (shift < 0) r /= pow10(-shift);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  if (text.empty()) bad(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+'))
    num_digits.remove_prefix(1);
  if (!all_digits(num_digits) || !all_digits(den)) bad(text);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  Rat r(mpz_class(std::string(num_digits), 10), d);
  r.canonicalize();
  if (num[0] == '-') r = -r;
  return r;
}

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const Rat& x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), to_double(x));
  return std::string(buf, end);
}

// mpq_get_d truncates toward zero; step to the neighbour when it is closer.
double to_double(const Rat& x) {
  double d = mpq_get_d(x.get_mpq_t());
  if (x == 0 || !std::isfinite(d)) return d;
  double e = std::nextafter(d, x > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(e)) return d;
  Rat gap_d = abs_rat(x - from_double(d)), gap_e = abs_rat(x - from_double(e));
  if (gap_e < gap_d) return e;
  if (gap_e == gap_d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    return (bits & 1) ? e : d;
  }
  return d;
}

Rat from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

mpz_class floor_rat(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

mpz_class ceil_rat(const Rat& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

int ceil_log2(const Rat& x) {
  if (x <= 1) return 0;
  mpz_class c = ceil_rat(x) - 1;
  return static_cast<int>(mpz_sizeinbase(c.get_mpz_t(), 2));
}

Rat floor_dyadic(const Rat& x, unsigned bits) {
  mpz_class scale = 1;
  scale <<= bits;
  Rat scaled = x * scale;
  Rat r(floor_rat(scaled), scale);
  r.canonicalize();
  return r;
}

}  // namespace fedex
