#pragma once

// Scalar types shared across the library.
//
// Rational mode keeps every quantity as an exact boost cpp_rational, so
// n-copy component values such as (13/45)^n never lose precision and curve
// comparisons are decided exactly.  Log-float mode stores (sign, log|x|)
// pairs that survive the underflow of v^n for several hundred copies while
// preserving the ordering of ratios spanning hundreds of orders of
// magnitude.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace magicdist {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Big-integer combinatorics
// ---------------------------------------------------------------------------

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline BigInt binomial_big(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// n! / (q_1! ... q_D!) with n = sum(q)
inline BigInt multinomial_big(const std::vector<int>& parts) {
  BigInt r = 1;
  unsigned acc = 0;
  for (int q : parts) {
    if (q < 0) throw std::invalid_argument("multinomial_big: negative part");
    acc += static_cast<unsigned>(q);
    r *= binomial_big(acc, static_cast<unsigned>(q));
  }
  return r;
}

// Natural log of a positive big integer, valid far beyond double range.
inline double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_big: argument must be positive");
  const unsigned bits = msb(x);
  if (bits < 512) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 512;
  const BigInt t = x >> shift;
  return std::log(t.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_rational(const Rational& x) {
  if (x <= 0) throw std::domain_error("log_rational: argument must be positive");
  return log_big(numerator(x)) - log_big(denominator(x));
}

inline double big_to_double(const BigInt& x) { return x.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
  return Rational(big_pow(numerator(base), exp), big_pow(denominator(base), exp));
}

// Parses a plain decimal literal ("0.1", "-3", "2.5e-3") to an exact rational.
inline Rational rational_from_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational_from_decimal: empty string");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  BigInt mantissa = 0;
  long frac_digits = 0, exponent = 0;
  bool any_digit = false, in_frac = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if (c == 'e' || c == 'E') {
      exponent = std::stol(s.substr(pos + 1));
      pos = s.size() - 1;
    } else {
      throw std::invalid_argument("rational_from_decimal: bad literal '" + s + "'");
    }
  }
  if (!any_digit) throw std::invalid_argument("rational_from_decimal: bad literal '" + s + "'");
  Rational r(mantissa, 1);
  const long net = exponent - frac_digits;
  if (net > 0)
    r *= Rational(big_pow(10, static_cast<unsigned>(net)), 1);
  else if (net < 0)
    r /= Rational(big_pow(10, static_cast<unsigned>(-net)), 1);
  return neg ? -r : r;
}

// ---------------------------------------------------------------------------
// SignedLog: value = sgn * exp(lg)
// ---------------------------------------------------------------------------

struct SignedLog {
  int sgn = 0;  // -1, 0, +1
  double lg = -std::numeric_limits<double>::infinity();

  SignedLog() = default;
  SignedLog(int s, double l) : sgn(s), lg(l) {
    if (sgn == 0 || lg == -std::numeric_limits<double>::infinity()) {
      sgn = 0;
      lg = -std::numeric_limits<double>::infinity();
    }
  }

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {1, 0.0}; }

  static SignedLog from_double(double x) {
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }

  static SignedLog from_big(const BigInt& x) {
    if (x == 0) return {};
    return {x > 0 ? 1 : -1, log_big(abs(x))};
  }

  static SignedLog from_rational(const Rational& x) {
    if (x == 0) return {};
    return {x > 0 ? 1 : -1, log_rational(abs(x))};
  }

  double to_double() const { return sgn == 0 ? 0.0 : sgn * std::exp(lg); }

  SignedLog operator-() const { return {-sgn, lg}; }

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) {
    if (a.sgn == 0 || b.sgn == 0) return {};
    return {a.sgn * b.sgn, a.lg + b.lg};
  }

  friend SignedLog operator/(const SignedLog& a, const SignedLog& b) {
    if (b.sgn == 0) throw std::domain_error("SignedLog: division by zero");
    if (a.sgn == 0) return {};
    return {a.sgn * b.sgn, a.lg - b.lg};
  }

  friend SignedLog operator+(const SignedLog& a, const SignedLog& b) {
    if (a.sgn == 0) return b;
    if (b.sgn == 0) return a;
    const SignedLog& hi = (a.lg >= b.lg) ? a : b;
    const SignedLog& lo = (a.lg >= b.lg) ? b : a;
    const double d = lo.lg - hi.lg;  // <= 0
    if (hi.sgn == lo.sgn) return {hi.sgn, hi.lg + std::log1p(std::exp(d))};
    if (d == 0.0) return {};
    return {hi.sgn, hi.lg + std::log1p(-std::exp(d))};
  }

  friend SignedLog operator-(const SignedLog& a, const SignedLog& b) { return a + (-b); }

  SignedLog& operator+=(const SignedLog& o) { return *this = *this + o; }
  SignedLog& operator*=(const SignedLog& o) { return *this = *this * o; }

  SignedLog pow_int(unsigned k) const {
    if (k == 0) return one();
    if (sgn == 0) return {};
    return {(sgn < 0 && (k & 1U)) ? -1 : 1, lg * static_cast<double>(k)};
  }

  friend int cmp(const SignedLog& a, const SignedLog& b) {
    if (a.sgn != b.sgn) return a.sgn < b.sgn ? -1 : 1;
    if (a.sgn == 0 || a.lg == b.lg) return 0;
    const bool less = (a.sgn > 0) ? (a.lg < b.lg) : (a.lg > b.lg);
    return less ? -1 : 1;
  }

  friend bool operator<(const SignedLog& a, const SignedLog& b) { return cmp(a, b) < 0; }
  friend bool operator>(const SignedLog& a, const SignedLog& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const SignedLog& a, const SignedLog& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const SignedLog& a, const SignedLog& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const SignedLog& a, const SignedLog& b) {
    return a.sgn == b.sgn && (a.sgn == 0 || a.lg == b.lg);
  }
};

inline SignedLog abs(const SignedLog& x) { return {x.sgn == 0 ? 0 : 1, x.lg}; }

// ---------------------------------------------------------------------------
// Generic scalar helpers used by the templated curve machinery
// ---------------------------------------------------------------------------

template <class V>
inline constexpr bool is_exact_number_v = false;
template <>
inline constexpr bool is_exact_number_v<Rational> = true;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const SignedLog& x) { return x.to_double(); }

inline double num_abs(double x) { return std::abs(x); }
inline Rational num_abs(const Rational& x) { return abs(x); }
inline SignedLog num_abs(const SignedLog& x) { return abs(x); }

template <class V>
V value_from_rational(const Rational& x);
template <>
inline double value_from_rational<double>(const Rational& x) { return to_double(x); }
template <>
inline Rational value_from_rational<Rational>(const Rational& x) { return x; }
template <>
inline SignedLog value_from_rational<SignedLog>(const Rational& x) {
  return SignedLog::from_rational(x);
}

template <class V>
V value_from_int(long x) { return value_from_rational<V>(Rational(x)); }
template <>
inline double value_from_int<double>(long x) { return static_cast<double>(x); }

inline double value_pow(double x, unsigned k) { return std::pow(x, static_cast<double>(k)); }
inline Rational value_pow(const Rational& x, unsigned k) { return rational_pow(x, k); }
inline SignedLog value_pow(const SignedLog& x, unsigned k) { return x.pow_int(k); }

inline double value_times_big(double v, const BigInt& m) { return v * big_to_double(m); }
inline Rational value_times_big(const Rational& v, const BigInt& m) { return v * Rational(m); }
inline SignedLog value_times_big(const SignedLog& v, const BigInt& m) {
  return v * SignedLog::from_big(m);
}

// Relative closeness used for merging nearly equal float-mode components.
inline bool approx_same(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1e-300, std::abs(a), std::abs(b)});
}
inline bool approx_same(const Rational& a, const Rational& b, double) { return a == b; }
inline bool approx_same(const SignedLog& a, const SignedLog& b, double rel) {
  if (a.sgn != b.sgn) return a.sgn == 0 && b.sgn == 0;
  if (a.sgn == 0) return true;
  return std::abs(a.lg - b.lg) <= rel;
}

// Fixed 17-significant-digit formatting shared by all CSV/JSON emitters.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace magicdist
