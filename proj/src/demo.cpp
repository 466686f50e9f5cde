#include "contologic/demo.hpp"

namespace contologic {

ExtRational parse_ext_rational(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtRational::pos_inf();
  if (s == "-inf") return ExtRational::neg_inf();
  return ExtRational::finite(parse_rational(s));
}

std::string to_string(const ExtRational& r) {
  switch (r.kind) {
    case ExtRational::Kind::PosInf: return "inf";
    case ExtRational::Kind::NegInf: return "-inf";
    default: return to_string(r.value);
  }
}

ExtRational ext_times(const Rational& q, const ExtRational& r) {
  if (r.is_finite()) return ExtRational::finite(q * r.value);
  if (q == 0) return ExtRational::finite(0);
  bool positive = (q > 0) == (r.kind == ExtRational::Kind::PosInf);
  return positive ? ExtRational::pos_inf() : ExtRational::neg_inf();
}

DemoRow demo_row(const ExtRational& r, const Rational& q) {
  DemoRow row;
  row.r = r;
  row.q = q;
  switch (r.kind) {
    case ExtRational::Kind::PosInf:
      row.r_plus = r;
      row.r_minus = ExtRational::finite(0);
      break;
    case ExtRational::Kind::NegInf:
      row.r_plus = ExtRational::finite(0);
      row.r_minus = ExtRational::pos_inf();
      break;
    default:
      row.r_plus = ExtRational::finite(r.value > 0 ? r.value : Rational(0));
      row.r_minus = ExtRational::finite(r.value < 0 ? Rational(-r.value) : Rational(0));
  }
  row.qr = ext_times(q, r);
  const auto& qr = row.qr;
  if (qr.kind == ExtRational::Kind::PosInf || (qr.is_finite() && qr.value >= 1)) {
    row.branch = "qr >= 1";
    row.value = 1;
  } else if (qr.kind == ExtRational::Kind::NegInf || qr.value <= 0) {
    row.branch = "qr <= 0";
    row.value = 0;
  } else {
    row.branch = "0 <= qr <= 1";
    row.value = qr.value;
  }
  return row;
}

std::vector<DemoRow> demo_example01(const std::vector<std::pair<ExtRational, Rational>>& samples) {
  std::vector<DemoRow> out;
  for (const auto& [r, q] : samples) out.push_back(demo_row(r, q));
  return out;
}

}  // namespace contologic
