#include "contologic/rational.hpp"

#include <cctype>

namespace contologic {

Rational rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error("malformed rational '" + std::string(text) + "' (expected num/den)");
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw Error("rational with zero denominator: '" + std::string(text) + "'");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (n != 0 && g != 1) throw Error("rational not in lowest terms: '" + std::string(text) + "'");
  if (n == 0 && d != 1) throw Error("rational not in lowest terms: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow2_neg(unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  Rational q(mpz_class(1), den);
  q.canonicalize();
  return q;
}

}  // namespace contologic
