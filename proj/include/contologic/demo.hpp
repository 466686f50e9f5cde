#pragma once

#include <string>
#include <vector>

#include "contologic/rational.hpp"

namespace contologic {

/// Element of [-inf, inf].
struct ExtRational {
  enum class Kind { Finite, PosInf, NegInf };
  Kind kind = Kind::Finite;
  Rational value;  // meaningful when finite

  static ExtRational finite(Rational q) { return {Kind::Finite, std::move(q)}; }
  static ExtRational pos_inf() { return {Kind::PosInf, 0}; }
  static ExtRational neg_inf() { return {Kind::NegInf, 0}; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool operator==(const ExtRational&) const = default;
};

/// "n/d", "inf", "+inf", "-inf".
ExtRational parse_ext_rational(const std::string& s);
std::string to_string(const ExtRational& r);

/// q * r with 0 * inf = 0.
ExtRational ext_times(const Rational& q, const ExtRational& r);

struct DemoRow {
  ExtRational r;
  ExtRational r_plus;
  ExtRational r_minus;
  Rational q;
  ExtRational qr;
  std::string branch;  // "qr >= 1", "0 <= qr <= 1", "qr <= 0"
  Rational value;      // P(qa)
};

/// P(qa) = 1 if qr >= 1, qr if 0 <= qr <= 1, 0 if qr <= 0.
DemoRow demo_row(const ExtRational& r, const Rational& q);
std::vector<DemoRow> demo_example01(const std::vector<std::pair<ExtRational, Rational>>& samples);

}  // namespace contologic
