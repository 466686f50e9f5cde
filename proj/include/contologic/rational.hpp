#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace contologic {

/// Exact rational scalar used for every truth value and distance.
using Rational = mpq_class;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Builds num/den in canonical form.
Rational rat(std::int64_t num, std::int64_t den = 1);

/// Parses "k" or "k/n". Rejects decimals, signs on the denominator and
/// fractions not in lowest terms.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form (integers are written "k/1").
std::string to_string(const Rational& q);

/// 2^-n exactly.
Rational pow2_neg(unsigned n);

namespace truth {

// Continuous-logic connectives on [0,1]. All are closed on [0,1].
inline Rational neg(const Rational& a) { return Rational(1) - a; }

/// Truncated subtraction a -. b.
inline Rational tsub(const Rational& a, const Rational& b) {
  Rational r = a - b;
  return r > 0 ? r : Rational(0);
}

/// Truncated addition a +. b.
inline Rational tadd(const Rational& a, const Rational& b) {
  Rational r = a + b;
  return r < 1 ? r : Rational(1);
}

inline Rational scale(const Rational& q, const Rational& a) {
  Rational r = q * a;
  return r < 1 ? r : Rational(1);
}

inline Rational absdiff(const Rational& a, const Rational& b) { return abs(Rational(a - b)); }

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline bool in_unit_interval(const Rational& a) { return a >= 0 && a <= 1; }

}  // namespace truth
}  // namespace contologic
