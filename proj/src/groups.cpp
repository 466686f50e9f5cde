#include "contologic/groups.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "contologic/topometric.hpp"

namespace contologic {

bool FiniteMetricGroup::is_member(Element e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

Element FiniteMetricGroup::mul(Element a, Element b) const {
  Element r = op.at(a * size() + b);
  if (r == none) throw Error("product undefined outside the group");
  return r;
}

Element FiniteMetricGroup::inv(Element a) const {
  Element r = inverse.at(a);
  if (r == none) throw Error("inverse undefined outside the group");
  return r;
}

Element FiniteMetricGroup::mul_ext(Element a, Element b) const {
  if (!ambient_op.empty()) return ambient_op.at(a * size() + b);
  return mul(a, b);
}

FiniteMetricGroup cyclic_group(std::size_t n, Table metric) {
  FiniteMetricGroup g;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  g.space = make_metric_space(std::move(names), std::move(metric));
  for (Element i = 0; i < n; ++i) {
    g.members.push_back(i);
    g.inverse.push_back((n - i) % n);
    for (Element j = 0; j < n; ++j) g.op.push_back((i + j) % n);
  }
  return g;
}

namespace {

std::vector<std::string> names_of(const FiniteStructure& m, std::initializer_list<Element> es) {
  std::vector<std::string> out;
  for (Element e : es) out.push_back(m.name(e));
  return out;
}

}  // namespace

StructureReport check_group(const FiniteMetricGroup& g) {
  StructureReport r;
  const auto& m = g.space;
  const std::size_t n = g.size();
  auto fail = [&](std::string kind, std::vector<std::string> w, std::string detail) {
    r.ok = false;
    for (const auto& v : r.violations)
      if (v.kind == kind) return;
    r.violations.push_back({std::move(kind), "group", std::move(w), std::move(detail)});
  };
  if (g.op.size() != n * n || g.inverse.size() != n) {
    fail("shape", {}, "operation or inverse table has the wrong size");
    return r;
  }
  if (g.members.empty()) {
    fail("shape", {}, "empty group");
    return r;
  }
  for (Element a : g.members)
    for (Element b : g.members) {
      Element c = g.op[a * n + b];
      if (c == FiniteMetricGroup::none || !g.is_member(c))
        fail("closure", names_of(m, {a, b}), "product undefined or outside G");
    }
  if (!r.ok) return r;
  if (!g.is_member(g.identity)) fail("identity", {}, "identity is not in G");
  for (Element a : g.members) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
      fail("identity", names_of(m, {a}), "e*x or x*e differs from x");
    Element i = g.inverse[a];
    if (i == FiniteMetricGroup::none || !g.is_member(i))
      fail("inverse", names_of(m, {a}), "inverse undefined or outside G");
    else if (g.mul(a, i) != g.identity || g.mul(i, a) != g.identity)
      fail("inverse", names_of(m, {a, i}), "x*x^-1 differs from e");
  }
  for (Element a : g.members)
    for (Element b : g.members)
      for (Element c : g.members)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          fail("associativity", names_of(m, {a, b, c}), "(ab)c != a(bc)");
  return r;
}

InvarianceFlags check_invariance(const FiniteMetricGroup& g, const Table& d) {
  if (!check_group(g).ok) throw Error("not a group");
  if (d.arity != 2 || d.universe != g.size()) throw Error("metric has the wrong shape");
  for (Element x : g.members)
    for (Element y : g.members)
      if (d(x, y) != d(y, x) || (x == y) != (d(x, y) == 0))
        throw Error("d is not a metric on G at (" + g.space.name(x) + "," + g.space.name(y) + ")");
  for (Element x : g.members)
    for (Element y : g.members)
      for (Element z : g.members)
        if (d(x, y) > d(x, z) + d(z, y)) throw Error("d is not a metric on G (triangle)");

  InvarianceFlags f;
  for (Element z : g.members)
    for (Element x : g.members)
      for (Element y : g.members) {
        if (f.left && d(g.mul(z, x), g.mul(z, y)) != d(x, y)) {
          f.left = false;
          f.left_witness = std::array<Element, 3>{z, x, y};
        }
        if (f.right && d(g.mul(x, z), g.mul(y, z)) != d(x, y)) {
          f.right = false;
          f.right_witness = std::array<Element, 3>{z, x, y};
        }
      }
  for (Element x : g.members)
    for (Element y : g.members)
      if (f.inverse && d(g.inv(x), g.inv(y)) != d(x, y)) {
        f.inverse = false;
        f.inverse_witness = std::array<Element, 2>{x, y};
      }
  if ((f.left && f.inverse && !f.right) || (f.right && f.inverse && !f.left) || (f.left && f.right && !f.inverse))
    throw std::logic_error("invariance flags contradict the group identities");
  return f;
}

Table invariant_metric(const FiniteMetricGroup& g) {
  if (!check_group(g).ok) throw Error("not a group");
  if (!g.whole()) throw Error("invariant_metric needs the group to be the whole universe");
  const std::size_t n = g.size();
  const Table& d = g.metric();
  Table out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
          out(x, y) = truth::max(out(x, y), d(g.mul(g.mul(u, x), v), g.mul(g.mul(u, y), v)));
  FiniteMetricGroup h = g;
  h.space.metric = out;
  auto f = check_invariance(h, out);
  if (!f.left || !f.right || !f.inverse) throw std::logic_error("invariant_metric output is not bi-invariant");
  return out;
}

bool is_subgroup(const FiniteMetricGroup& g, const std::vector<Element>& H) {
  std::set<Element> h(H.begin(), H.end());
  if (h.empty() || !h.count(g.identity)) return false;
  for (Element a : h) {
    if (!g.is_member(a) || !h.count(g.inv(a))) return false;
    for (Element b : h)
      if (!h.count(g.mul(a, b))) return false;
  }
  return true;
}

CosetDistance coset_union_distance(const FiniteMetricGroup& g, const std::vector<Element>& H, Element x) {
  if (!check_group(g).ok) throw Error("not a group");
  if (!is_subgroup(g, H)) throw Error("H is not a subgroup of G");
  if (x >= g.size()) throw Error("point outside the universe");
  CosetDistance out;
  std::set<Element> covered;
  for (Element a : g.members) {
    if (covered.count(a)) continue;
    std::vector<Element> coset;
    for (Element h : H) coset.push_back(g.mul(a, h));
    std::sort(coset.begin(), coset.end());
    covered.insert(coset.begin(), coset.end());
    out.cosets.push_back(std::move(coset));
  }
  out.value = 1;
  for (const auto& c : out.cosets)
    for (Element e : c) out.value = truth::min(out.value, g.metric()(x, e));
  return out;
}

// ---------------------------------------------------------------------------
// approximate products

Table exact_product_table(const FiniteMetricGroup& g) {
  const std::size_t n = g.size();
  Table phi(n, 3);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Element xy = g.mul_ext(x, y);
      for (Element z = 0; z < n; ++z) phi[(x * n + y) * n + z] = g.metric()(xy, z);
    }
  return phi;
}

std::vector<Element> approx_product(const ApproxProduct& ap, Element x, Element y) {
  const std::size_t n = ap.group.size();
  std::vector<Element> out;
  for (Element z = 0; z < n; ++z)
    if (ap.phi[(x * n + y) * n + z] == 0) out.push_back(z);
  return out;
}

ProductAudit audit_approx_product(const ApproxProduct& ap) {
  const Rational& eps = ap.eps;
  const auto& g = ap.group;
  const std::size_t n = g.size();
  if (ap.phi.arity != 3 || ap.phi.universe != n) throw Error("phi must be ternary over the ambient universe");
  if (ap.X.arity != 1 || ap.Y.arity != 1) throw Error("X and Y must be unary sets");
  for (Element e : g.members)
    if (!ap.Y.contains(e)) throw Error("Y must contain G");
  for (std::size_t y : ap.Y.members)
    if (!ap.X.contains(y)) throw Error("Y must be inside X");

  if (eps < 0) throw Error("negative tolerance");
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (approx_product(ap, x, y).empty())
        throw Error("phi not normalized: no z with phi(" + g.space.name(x) + "," + g.space.name(y) + ",z) = 0");
  for (Element x : g.members)
    for (Element y : g.members)
      if (approx_product(ap, x, y) != std::vector<Element>{g.mul(x, y)})
        throw Error("phi does not define the group law at (" + g.space.name(x) + "," + g.space.name(y) + ")");

  ProductAudit a;
  const Table& d = g.metric();
  auto note = [&](std::string kind, std::vector<Element> w, Rational amount) {
    a.violations.push_back({std::move(kind), std::move(w), std::move(amount)});
  };
  for (std::size_t x : ap.Y.members)
    for (std::size_t y : ap.Y.members) {
      for (Element z : approx_product(ap, x, y))
        if (!ap.X.contains(z)) {
          a.containment = false;
          note("containment", {x, y, z}, 1);
        }
    }
  for (std::size_t x : ap.Y.members)
    for (std::size_t y : ap.Y.members)
      for (std::size_t y2 : ap.Y.members) {
        for (int side = 0; side < 2; ++side) {
          auto zs = side == 0 ? approx_product(ap, x, y) : approx_product(ap, y, x);
          auto zs2 = side == 0 ? approx_product(ap, x, y2) : approx_product(ap, y2, x);
          for (Element z : zs)
            for (Element z2 : zs2) {
              Rational defect = truth::absdiff(d(y, y2), d(z, z2));
              a.max_defect = truth::max(a.max_defect, defect);
              if (defect > eps) note(side == 0 ? "left-isometry" : "right-isometry", {x, y, y2, z, z2}, defect);
            }
        }
      }
  a.certified = a.violations.empty();
  return a;
}

TranslateCopy translate_copy(const ApproxProduct& ap, Element y0, const Rational& r, const Rational& eps) {
  if (eps < 0 || r <= eps) throw Error("translate_copy needs r > eps >= 0");
  ApproxProduct at = ap;
  at.eps = eps;
  if (!audit_approx_product(at).certified) throw Error("approximate product is not certified at eps");
  if (!ap.Y.contains(y0)) throw Error("y0 is not in Y");
  const auto& g = ap.group;
  const Table& d = g.metric();
  TranslateCopy t;
  PointSet G = PointSet::of(g.members);
  t.distance_y0_G = distance_to_set(g.space, y0, G);
  if (!(t.distance_y0_G > r))
    throw Error("y0 too close to G: d(y0, G) = " + to_string(t.distance_y0_G) + " <= r = " + to_string(r));
  std::set<Element> z;
  for (Element h : g.members)
    for (Element e : approx_product(ap, y0, h)) z.insert(e);
  t.Z.assign(z.begin(), z.end());
  t.distance_G_Z = 1;
  for (Element a : g.members)
    for (Element b : t.Z) t.distance_G_Z = truth::min(t.distance_G_Z, d(a, b));
  t.separated = t.distance_G_Z > r - eps;
  t.sep_G = eps_k_finite(d, g.members, r);
  t.sep_Z = eps_k_finite(d, t.Z, r - eps);
  t.sep_transfer = t.sep_Z >= t.sep_G;
  return t;
}

}  // namespace contologic
