#include "contologic/definable_sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace contologic {

PointSet PointSet::of(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return PointSet{1, std::move(elements)};
}

bool PointSet::contains(std::size_t flat) const {
  return std::binary_search(members.begin(), members.end(), flat);
}

PointSet zero_set(const Table& psi) {
  PointSet out{psi.arity, {}};
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (psi[i] == 0) out.members.push_back(i);
  return out;
}

Rational distance_to_set(const FiniteStructure& m, std::size_t x, const PointSet& X) {
  if (X.empty()) throw Error("distance to empty set undefined");
  Rational best = 1;
  for (std::size_t y : X.members) {
    Rational d = m.tuple_distance(X.arity, x, y);
    if (d < best) best = d;
    if (best == 0) break;
  }
  return best;
}

Table distance_table(const FiniteStructure& m, const PointSet& X) {
  Table t(m.size(), X.arity);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = distance_to_set(m, x, X);
  return t;
}

Table distance_union(const Table& dx, const Table& dy) {
  if (dx.arity != dy.arity || dx.universe != dy.universe)
    throw Error("union of sets of different arity");
  Table out = dx;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = truth::min(dx[i], dy[i]);
  return out;
}

Table distance_product(const Table& dx, const Table& dy) {
  if (dx.universe != dy.universe) throw Error("product over different universes");
  Table out(dx.universe, dx.arity + dy.arity);
  for (std::size_t a = 0; a < dx.size(); ++a)
    for (std::size_t b = 0; b < dy.size(); ++b) out[a * dy.size() + b] = truth::max(dx[a], dy[b]);
  return out;
}

Table distance_parametric_union(const Table& phi, std::size_t x_arity, const PointSet& Y) {
  if (x_arity + Y.arity != phi.arity) throw Error("parametric union: arity mismatch");
  if (Y.empty()) throw Error("distance to empty set undefined");
  const std::size_t ny = tuple_count(phi.universe, Y.arity);
  Table out(phi.universe, x_arity, 1);
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y : Y.members) out[x] = truth::min(out[x], phi[x * ny + y]);
  return out;
}

DistanceCertificate certify_distance_predicate(const FiniteStructure& m, const Table& psi) {
  if (psi.universe != m.size()) throw Error("predicate table over the wrong universe");
  DistanceCertificate c;
  const std::size_t k = psi.arity;
  for (std::size_t x = 0; x < psi.size(); ++x) {
    for (std::size_t y = 0; y < psi.size(); ++y) {
      Rational v = truth::tsub(truth::tsub(psi[x], psi[y]), m.tuple_distance(k, x, y));
      if (v > c.d1_margin) {
        c.d1_margin = v;
        c.d1_witness = {x, y};
      }
    }
  }
  for (std::size_t x = 0; x < psi.size(); ++x) {
    Rational inner = 1;
    for (std::size_t y = 0; y < psi.size() && inner > 0; ++y)
      inner = truth::min(inner, truth::max(psi[y], truth::tsub(m.tuple_distance(k, x, y), psi[x])));
    if (inner > c.d2_margin) {
      c.d2_margin = inner;
      c.d2_witness = x;
    }
  }
  c.pass = c.d1_margin == 0 && c.d2_margin == 0;

  PointSet z = zero_set(psi);
  bool is_distance = !z.empty() && distance_table(m, z) == psi;
  if (c.pass != is_distance)
    throw std::logic_error("D1/D2 verdict disagrees with the distance-to-zero-set comparison");
  return c;
}

Projection project_to_zero_set(const FiniteStructure& m, const Table& psi, std::size_t x,
                               const Rational& eps) {
  if (eps <= 0) throw Error("eps must be positive");
  if (!certify_distance_predicate(m, psi).pass) throw Error("predicate is not a certified distance predicate");
  const std::size_t k = psi.arity;
  Projection out;
  out.trace.push_back({x, psi[x], 0, 0});
  std::size_t a = x;
  for (unsigned n = 0; psi[a] != 0; ++n) {
    Rational tau = pow2_neg(n + 1) * eps;
    Rational bound = psi[a] + tau;
    std::optional<std::size_t> best;
    Rational best_d;
    for (std::size_t y = 0; y < psi.size(); ++y) {
      if (y == a || psi[y] >= tau) continue;
      Rational d = m.tuple_distance(k, a, y);
      if (d < bound && (!best || d < best_d)) {
        best = y;
        best_d = d;
      }
    }
    if (!best) throw std::logic_error("projection step found no admissible point");
    out.trace.push_back({*best, psi[*best], best_d, bound});
    a = *best;
  }
  out.point = a;
  return out;
}

RelativizedSup relativized_sup(const FiniteStructure& m, const Table& phi, const PointSet& X,
                               const Rational& eps) {
  if (phi.arity != 2 || X.arity != 1) throw Error("relativized sup expects a binary table and a unary set");
  if (X.empty()) throw Error("distance to empty set undefined");
  if (eps <= 0) throw Error("eps must be positive");
  const std::size_t n = m.size();
  RelativizedSup r;
  r.delta = 1;
  for (Element x = 0; x < n; ++x)
    for (Element x2 = x + 1; x2 < n; ++x2)
      for (Element y = 0; y < n; ++y)
        if (truth::absdiff(phi(x, y), phi(x2, y)) > eps) {
          r.delta = truth::min(r.delta, m.dist(x, x2));
          break;
        }
  Rational inv = 1 / r.delta;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  r.k = Rational(fl) + 1;  // k > 1/delta

  Table dX = distance_table(m, X);
  r.psi_delta = Table(n, 1);
  for (Element x = 0; x < n; ++x) r.psi_delta[x] = truth::scale(r.k, dX[x]);
  r.zeta = Table(n, 2);
  r.sup_zeta = Table(n, 1);
  r.sup_on_X = Table(n, 1);
  r.sandwich_ok = true;
  for (Element y = 0; y < n; ++y) {
    for (Element x = 0; x < n; ++x) {
      r.zeta(x, y) = truth::tsub(phi(x, y), r.psi_delta[x]);
      r.sup_zeta[y] = truth::max(r.sup_zeta[y], r.zeta(x, y));
      if (X.contains(x)) r.sup_on_X[y] = truth::max(r.sup_on_X[y], phi(x, y));
    }
    if (!(r.sup_on_X[y] <= r.sup_zeta[y] && r.sup_zeta[y] <= r.sup_on_X[y] + eps)) r.sandwich_ok = false;
  }
  return r;
}

Rational implication_delta(const Table& phi, const Table& psi, const PointSet& X, const Rational& e) {
  Rational out = 1;
  for (std::size_t x : X.members)
    if (psi[x] > e) out = truth::min(out, phi[x]);
  return out;
}

namespace {

/// Least n >= 0 with 2^-n < v (v > 0).
unsigned least_below(const Rational& v) {
  unsigned n = 0;
  while (pow2_neg(n) >= v) ++n;
  return n;
}

/// Least n >= 0 with 2^-n <= v (v > 0).
unsigned least_at_most(const Rational& v) {
  unsigned n = 0;
  while (pow2_neg(n) > v) ++n;
  return n;
}

}  // namespace

ImplicationZeroSet implication_zero_set(const FiniteStructure& m, const Table& phi, const Table& psi,
                                        const PointSet& X) {
  if (phi.arity != psi.arity || phi.universe != m.size() || psi.universe != m.size())
    throw Error("implication: tables must share universe and arity");
  for (std::size_t x : X.members)
    if (phi[x] == 0 && psi[x] != 0)
      throw Error("hypothesis fails on X at " + m.tuple_name(phi.arity, x) + ": phi = 0 but psi = " +
                  to_string(psi[x]));

  // smallest positive psi on X; below it delta(2^-n) is constant
  std::optional<Rational> s;
  for (std::size_t x : X.members)
    if (psi[x] > 0 && (!s || psi[x] < *s)) s = psi[x];
  const Rational delta_inf = implication_delta(phi, psi, X, 0);

  ImplicationZeroSet out;
  out.chi = Table(phi.universe, phi.arity);
  unsigned max_prefix = 0;
  for (std::size_t x = 0; x < phi.size(); ++x) {
    const Rational& v = psi[x];
    if (v == 0) continue;
    Rational stable = s ? truth::min(v, *s) : v;
    unsigned n1 = least_below(stable);
    Rational c = truth::tsub(delta_inf, phi[x]);
    Rational tail;
    if (c < v) {
      n1 = std::max(n1, least_at_most(v - c));
      tail = c * pow2_neg(n1);
    } else {
      tail = v * pow2_neg(n1) - Rational(2, 3) * pow2_neg(2 * n1);
    }
    Rational sum = tail;
    for (unsigned n = 0; n < n1; ++n) {
      Rational e = pow2_neg(n);
      sum += pow2_neg(n + 1) *
             truth::min(truth::tsub(implication_delta(phi, psi, X, e), phi[x]), truth::tsub(v, e));
    }
    out.chi[x] = sum;
    max_prefix = std::max(max_prefix, n1);
  }
  for (unsigned n = 0; n <= max_prefix; ++n)
    out.delta.emplace_back(pow2_neg(n), implication_delta(phi, psi, X, pow2_neg(n)));

  out.zero_on_X = std::all_of(X.members.begin(), X.members.end(), [&](std::size_t x) { return out.chi[x] == 0; });
  out.implication_holds = true;
  for (std::size_t x = 0; x < phi.size(); ++x)
    if (out.chi[x] == 0 && phi[x] == 0 && psi[x] != 0) out.implication_holds = false;
  return out;
}

Table extend_partial_predicate(const FiniteStructure& m, const PartialPredicate& f) {
  const PointSet& dom = f.domain;
  if (dom.members.size() != f.values.size()) throw Error("partial predicate: values do not match domain");
  if (dom.empty()) throw Error("partial predicate with empty domain");
  const std::size_t k = dom.arity;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!truth::in_unit_interval(f.values[i])) throw Error("partial predicate value outside [0,1]");
    for (std::size_t j = 0; j < dom.size(); ++j) {
      Rational diff = truth::absdiff(f.values[i], f.values[j]);
      Rational bound = f.modulus(m.tuple_distance(k, dom.members[i], dom.members[j]));
      if (diff > bound)
        throw Error("modulus violated on domain at (" + m.tuple_name(k, dom.members[i]) + ", " +
                    m.tuple_name(k, dom.members[j]) + "): " + to_string(diff) + " > " + to_string(bound));
    }
  }
  Table out(m.size(), k, 1);
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t i = 0; i < dom.size(); ++i)
      out[x] = truth::min(out[x], f.values[i] + f.modulus(m.tuple_distance(k, x, dom.members[i])));
  return out;
}

Table normalize_graph_predicate(const Table& phi0) {
  if (phi0.arity == 0) throw Error("graph predicate needs at least one argument");
  const std::size_t n = phi0.universe;
  Table out = phi0;
  for (std::size_t row = 0; row < phi0.size(); row += n) {
    Rational low = 1;
    for (std::size_t y = 0; y < n; ++y) low = truth::min(low, phi0[row + y]);
    for (std::size_t y = 0; y < n; ++y) out[row + y] = truth::tsub(phi0[row + y], low);
  }
  return out;
}

namespace {

Rational sup_difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) best = truth::max(best, truth::absdiff(a[i], b[i]));
  return best;
}

std::size_t intern(std::vector<std::vector<Rational>>& sort, std::vector<Rational> v) {
  auto it = std::find(sort.begin(), sort.end(), v);
  if (it != sort.end()) return static_cast<std::size_t>(it - sort.begin());
  sort.push_back(std::move(v));
  return sort.size() - 1;
}

}  // namespace

CanonicalEmbedding canonical_embed(const FiniteStructure& m,
                                   const std::vector<std::pair<Element, Element>>& f,
                                   const Table& phi0) {
  const std::size_t n = m.size();
  if (phi0.arity != 2 || phi0.universe != n) throw Error("phi0 must be a binary table over the universe");
  for (const auto& [x, fx] : f)
    for (Element z = 0; z < n; ++z)
      if (phi0(x, z) != m.dist(fx, z))
        throw Error("phi0 disagrees with the graph at (" + m.name(x) + "," + m.name(z) + ")");

  CanonicalEmbedding e;
  for (Element x = 0; x < n; ++x) {
    std::vector<Rational> row(n);
    for (Element z = 0; z < n; ++z) row[z] = phi0(x, z);
    e.f_hat.push_back(intern(e.sort, std::move(row)));
  }
  for (Element y = 0; y < n; ++y) {
    std::vector<Rational> row(n);
    for (Element z = 0; z < n; ++z) row[z] = m.dist(y, z);
    e.theta.push_back(intern(e.sort, std::move(row)));
  }
  const std::size_t s = e.sort.size();
  e.sort_metric = Table(s, 2);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) e.sort_metric(a, b) = sup_difference(e.sort[a], e.sort[b]);

  e.phi = Table(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Rational best = 0;
      for (Element z = 0; z < n; ++z) best = truth::max(best, truth::absdiff(phi0(x, z), m.dist(z, y)));
      e.phi(x, y) = best;
    }

  e.eq1_ok = true;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element y2 = 0; y2 < n; ++y2) {
        const Rational& d = m.dist(y, y2);
        if (e.phi(x, y) - e.phi(x, y2) > d || d > e.phi(x, y) + e.phi(x, y2)) e.eq1_ok = false;
      }
  e.theta_isometric = true;
  for (Element y = 0; y < n; ++y)
    for (Element y2 = 0; y2 < n; ++y2)
      if (e.sort_metric(e.theta[y], e.theta[y2]) != m.dist(y, y2)) e.theta_isometric = false;
  e.f_hat_matches = std::all_of(f.begin(), f.end(), [&](const auto& p) { return e.f_hat[p.first] == e.theta[p.second]; });
  e.phi_is_distance = true;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (e.phi(x, y) != e.sort_metric(e.f_hat[x], e.theta[y])) e.phi_is_distance = false;
  return e;
}

}  // namespace contologic
