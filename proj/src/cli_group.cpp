#include <memory>

#include "cli_support.hpp"
#include "contologic/model_io.hpp"

namespace contologic::cli {

namespace {

struct Args {
  std::string group, subgroup, point, phi, X, Y, eps, y0, r;
};

Json names(const FiniteStructure& m, const std::vector<Element>& es) {
  Json out = Json::array();
  for (Element e : es) out.push_back(m.name(e));
  return out;
}

template <std::size_t N>
Json witness(const FiniteStructure& m, const std::optional<std::array<Element, N>>& w) {
  if (!w) return nullptr;
  return names(m, std::vector<Element>(w->begin(), w->end()));
}

ApproxProduct product_args(const Args& a) {
  ApproxProduct ap;
  ap.group = load_group(a.group);
  const auto& m = ap.group.space;
  ap.phi = a.phi.empty() ? exact_product_table(ap.group) : table_arg(m, a.phi);
  PointSet all;
  for (Element e = 0; e < m.size(); ++e) all.members.push_back(e);
  ap.X = a.X.empty() ? all : set_arg(m, a.X);
  ap.Y = a.Y.empty() ? ap.X : set_arg(m, a.Y);
  ap.eps = parse_rational(a.eps);
  return ap;
}

void product_options(CLI::App* sub, Args& a) {
  sub->add_option("--group", a.group)->required();
  sub->add_option("--phi", a.phi, "Ternary predicate (default: d(x*y, z))");
  sub->add_option("--X", a.X, "Neighbourhood X (default: the universe)");
  sub->add_option("--Y", a.Y, "Neighbourhood Y (default: X)");
  sub->add_option("--eps", a.eps)->required();
}

}  // namespace

void register_group_verbs(CLI::App& app, std::vector<Verb>& verbs) {
  auto a = std::make_shared<Args>();

  auto* check = app.add_subcommand("group-check", "Group axioms and invariance of the metric");
  check->add_option("--group", a->group)->required();
  verbs.push_back({check, [a] {
                     auto g = load_group(a->group);
                     auto r = check_group(g);
                     Report out;
                     out.body["group"] = report_json(r);
                     out.pass = r.ok;
                     if (!r.ok) return out;
                     auto f = check_invariance(g, g.metric());
                     out.body["left_invariant"] = f.left;
                     out.body["right_invariant"] = f.right;
                     out.body["inverse_invariant"] = f.inverse;
                     if (f.left_witness) out.body["left_witness"] = witness(g.space, f.left_witness);
                     if (f.right_witness) out.body["right_witness"] = witness(g.space, f.right_witness);
                     if (f.inverse_witness) out.body["inverse_witness"] = witness(g.space, f.inverse_witness);
                     return out;
                   }});

  auto* inv = app.add_subcommand("invariant-metric", "d1(x, y) = max over u, v of d(uxv, uyv)");
  inv->add_option("--group", a->group)->required();
  verbs.push_back({inv, [a] {
                     auto g = load_group(a->group);
                     Table d1 = invariant_metric(g);
                     bool dominates = true;
                     for (std::size_t i = 0; i < d1.size(); ++i) dominates = dominates && d1[i] >= g.metric()[i];
                     Report out;
                     out.body["metric"] = matrix_json(g.space, d1);
                     out.body["dominates_input"] = dominates;
                     out.body["note"] = "uses d(uxv, uyv); the one-sided form d(uxv, yv) is not translation symmetric";
                     out.pass = dominates;
                     return out;
                   }});

  auto* coset = app.add_subcommand("coset-dist", "d(x, G) through the cosets of a subgroup");
  coset->add_option("--group", a->group)->required();
  coset->add_option("--subgroup", a->subgroup)->required();
  coset->add_option("--point", a->point)->required();
  verbs.push_back({coset, [a] {
                     auto g = load_group(a->group);
                     auto H = set_arg(g.space, a->subgroup);
                     Element x = element_arg(g.space, a->point);
                     auto c = coset_union_distance(g, H.members, x);
                     Rational direct = distance_to_set(g.space, x, PointSet::of(g.members));
                     Report out;
                     Json cosets = Json::array();
                     for (const auto& cs : c.cosets) cosets.push_back(names(g.space, cs));
                     out.body["cosets"] = cosets;
                     out.body["distance"] = to_string(c.value);
                     out.body["direct"] = to_string(direct);
                     out.pass = c.value == direct;
                     return out;
                   }});

  auto* ap = app.add_subcommand("approx-product", "Audit an approximate multiplication on Y");
  product_options(ap, *a);
  verbs.push_back({ap, [a] {
                     auto p = product_args(*a);
                     auto r = audit_approx_product(p);
                     Report out;
                     out.body["certified"] = r.certified;
                     out.body["max_defect"] = to_string(r.max_defect);
                     out.body["containment"] = r.containment;
                     Json v = Json::array();
                     for (const auto& x : r.violations)
                       v.push_back({{"kind", x.kind}, {"witness", names(p.group.space, x.witness)},
                                    {"amount", to_string(x.amount)}});
                     out.body["violations"] = v;
                     out.pass = r.certified;
                     return out;
                   }});

  auto* tc = app.add_subcommand("translate-copy", "Translate G by y0 and compare separation");
  product_options(tc, *a);
  tc->add_option("--y0", a->y0)->required();
  tc->add_option("--r", a->r)->required();
  verbs.push_back({tc, [a] {
                     auto p = product_args(*a);
                     auto t = translate_copy(p, element_arg(p.group.space, a->y0), parse_rational(a->r), p.eps);
                     Report out;
                     out.body["Z"] = names(p.group.space, t.Z);
                     out.body["distance_y0_G"] = to_string(t.distance_y0_G);
                     out.body["distance_G_Z"] = to_string(t.distance_G_Z);
                     out.body["separated"] = t.separated;
                     out.body["sep_G"] = t.sep_G;
                     out.body["sep_Z"] = t.sep_Z;
                     out.body["sep_transfer"] = t.sep_transfer;
                     out.pass = t.separated && t.sep_transfer;
                     return out;
                   }});
}

}  // namespace contologic::cli
