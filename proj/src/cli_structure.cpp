#include <memory>

#include "cli_support.hpp"
#include "contologic/formula.hpp"

namespace contologic::cli {

namespace {

struct Args {
  std::string structure, predicate, formula, set, point, eps, combine, with, phi, psi, relativize, domain,
      function, phi0;
  std::vector<std::string> assign;
  bool normalize = false;
};

Json certificate_json(const FiniteStructure& m, const Table& psi, const DistanceCertificate& c) {
  Table shape(m.size(), psi.arity);
  auto tuple = [&](std::size_t i) {
    std::string s;
    for (Element e : shape.tuple(i)) s += (s.empty() ? "" : ",") + m.name(e);
    return s;
  };
  Json j{{"pass", c.pass}, {"d1_margin", to_string(c.d1_margin)}, {"d2_margin", to_string(c.d2_margin)}};
  if (!c.d1_witness.empty()) {
    Json w = Json::array();
    for (auto i : c.d1_witness) w.push_back(tuple(i));
    j["d1_witness"] = w;
  }
  if (c.d2_witness) j["d2_witness"] = tuple(*c.d2_witness);
  return j;
}

Json table_rows(const FiniteStructure& m, const Table& t) { return table_json(m, t); }

}  // namespace

void register_structure_verbs(CLI::App& app, std::vector<Verb>& verbs) {
  auto a = std::make_shared<Args>();

  auto* check = app.add_subcommand("check-structure", "Metric axioms and declared moduli");
  check->add_option("--structure", a->structure)->required();
  verbs.push_back({check, [a] {
                     auto m = load_structure(a->structure);
                     auto r = check_structure(m);
                     Report out;
                     out.body["structure"] = report_json(r);
                     Json moduli = Json::object();
                     for (const auto& p : m.signature.predicates)
                       moduli[p.name] = modulus_json(realized_modulus(m, p.name));
                     out.body["realized_moduli"] = moduli;
                     out.pass = r.ok;
                     return out;
                   }});

  auto* eval = app.add_subcommand("eval", "Evaluate a formula exactly");
  eval->add_option("--structure", a->structure)->required();
  eval->add_option("--formula", a->formula)->required();
  eval->add_option("--assign", a->assign, "var=element (repeatable)");
  verbs.push_back({eval, [a] {
                     auto m = load_structure(a->structure);
                     Formula f = parse_formula(a->formula, m.signature);
                     Assignment asg;
                     for (const auto& kv : a->assign) {
                       auto eq = kv.find('=');
                       if (eq == std::string::npos) throw Error("--assign expects var=element");
                       asg[kv.substr(0, eq)] = m.element(kv.substr(eq + 1));
                     }
                     Report out;
                     out.body["formula"] = format_formula(f);
                     std::vector<std::string> open;
                     for (const auto& v : free_variables(f))
                       if (!asg.count(v)) open.push_back(v);
                     if (open.empty()) {
                       out.body["value"] = to_string(eval_formula(f, m, asg));
                     } else {
                       if (!asg.empty()) throw Error("assign all free variables or none");
                       out.body["variables"] = open;
                       out.body["table"] = table_rows(m, formula_table(f, m, open));
                     }
                     Json mod = Json::array();
                     for (const char* t : {"1/8", "1/4", "1/2", "1/1"})
                       mod.push_back({t, to_string(composed_modulus(f, m, parse_rational(t)))});
                     out.body["composed_modulus"] = mod;
                     return out;
                   }});

  auto* cert = app.add_subcommand("certify-dist", "Certify a distance predicate (D1/D2)");
  cert->add_option("--structure", a->structure)->required();
  cert->add_option("--predicate", a->predicate, "Predicate to certify");
  cert->add_option("--set", a->set, "Certify d(., X) for this set instead");
  cert->add_option("--combine", a->combine, "union | product | parametric")
      ->check(CLI::IsMember({"union", "product", "parametric"}));
  cert->add_option("--with", a->with, "Second predicate for union/product; parameter set for parametric");
  verbs.push_back({cert, [a] {
                     auto m = load_structure(a->structure);
                     Table psi;
                     if (!a->set.empty()) {
                       psi = distance_table(m, set_arg(m, a->set));
                     } else if (!a->predicate.empty()) {
                       psi = table_arg(m, a->predicate);
                     } else {
                       throw Error("give --predicate or --set");
                     }
                     if (a->combine == "union") psi = distance_union(psi, table_arg(m, a->with));
                     if (a->combine == "product") psi = distance_product(psi, table_arg(m, a->with));
                     if (a->combine == "parametric") {
                       if (psi.arity < 2) throw Error("parametric union needs a table of arity >= 2");
                       psi = distance_parametric_union(psi, psi.arity - 1, set_arg(m, a->with));
                     }
                     auto c = certify_distance_predicate(m, psi);
                     Report out;
                     out.body["arity"] = psi.arity;
                     out.body["certificate"] = certificate_json(m, psi, c);
                     out.body["zero_set"] = set_json(m, zero_set(psi));
                     out.pass = c.pass;
                     return out;
                   }});

  auto* proj = app.add_subcommand("project", "Walk to the zero set of a certified distance predicate");
  proj->add_option("--structure", a->structure)->required();
  proj->add_option("--predicate", a->predicate)->required();
  proj->add_option("--point", a->point)->required();
  proj->add_option("--eps", a->eps)->required();
  verbs.push_back({proj, [a] {
                     auto m = load_structure(a->structure);
                     const Table& psi = table_arg(m, a->predicate);
                     Element x = element_arg(m, a->point);
                     Rational eps = parse_rational(a->eps);
                     auto p = project_to_zero_set(m, psi, x, eps);
                     Report out;
                     Json trace = Json::array();
                     for (const auto& s : p.trace)
                       trace.push_back({m.name(s.point), to_string(s.value), to_string(s.gap), to_string(s.gap_bound)});
                     out.body["point"] = m.name(p.point);
                     out.body["trace"] = trace;
                     Rational bound = psi[x] + 4 * eps;
                     out.body["distance"] = to_string(m.dist(x, p.point));
                     out.body["bound"] = to_string(bound);
                     out.pass = psi[p.point] == 0 && m.dist(x, p.point) <= bound;
                     return out;
                   }});

  auto* impl = app.add_subcommand("implication-set", "Implication predicate chi, or a relativized sup");
  impl->add_option("--structure", a->structure)->required();
  impl->add_option("--phi", a->phi)->required();
  impl->add_option("--psi", a->psi, "Unary predicate (implication mode)");
  impl->add_option("--set", a->set, "X (default: the universe)");
  impl->add_option("--relativize", a->relativize, "eps: sup over X of the binary phi instead");
  verbs.push_back({impl, [a] {
                     auto m = load_structure(a->structure);
                     PointSet X;
                     if (a->set.empty()) {
                       for (Element e = 0; e < m.size(); ++e) X.members.push_back(e);
                     } else {
                       X = set_arg(m, a->set);
                     }
                     Report out;
                     if (!a->relativize.empty()) {
                       auto r = relativized_sup(m, table_arg(m, a->phi), X, parse_rational(a->relativize));
                       out.body["delta"] = to_string(r.delta);
                       out.body["k"] = to_string(r.k);
                       out.body["sup_zeta"] = unary_json(m, r.sup_zeta);
                       out.body["sup_on_X"] = unary_json(m, r.sup_on_X);
                       out.body["sandwich_ok"] = r.sandwich_ok;
                       out.pass = r.sandwich_ok;
                       return out;
                     }
                     if (a->psi.empty()) throw Error("--psi is required unless --relativize is given");
                     auto r = implication_zero_set(m, table_arg(m, a->phi), table_arg(m, a->psi), X);
                     out.body["chi"] = unary_json(m, r.chi);
                     Json d = Json::array();
                     for (const auto& [e, v] : r.delta) d.push_back({to_string(e), to_string(v)});
                     out.body["delta"] = d;
                     out.body["zero_on_X"] = r.zero_on_X;
                     out.body["implication_holds"] = r.implication_holds;
                     out.pass = r.zero_on_X && r.implication_holds;
                     return out;
                   }});

  auto* ext = app.add_subcommand("extend-pred", "Extend a predicate from a domain, or normalize a graph predicate");
  ext->add_option("--structure", a->structure)->required();
  ext->add_option("--predicate", a->predicate)->required();
  ext->add_option("--domain", a->domain, "Domain of the partial predicate");
  ext->add_flag("--normalize", a->normalize, "Subtract the row minimum in the last argument");
  verbs.push_back({ext, [a] {
                     auto m = load_structure(a->structure);
                     const Table& p = table_arg(m, a->predicate);
                     Report out;
                     if (a->normalize) {
                       out.body["normalized"] = table_rows(m, normalize_graph_predicate(p));
                       return out;
                     }
                     if (p.arity != 1) throw Error("extend-pred needs a unary predicate");
                     PartialPredicate f;
                     f.domain = set_arg(m, a->domain);
                     for (auto x : f.domain.members) f.values.push_back(p[x]);
                     f.modulus = a->predicate == "d" ? PLMap::identity() : m.signature.find_predicate(a->predicate)->modulus;
                     Table t = extend_partial_predicate(m, f);
                     out.body["extension"] = unary_json(m, t);
                     bool agrees = true;
                     for (auto x : f.domain.members) agrees = agrees && t[x] == p[x];
                     out.body["agrees_on_domain"] = agrees;
                     out.pass = agrees;
                     return out;
                   }});

  auto* emb = app.add_subcommand("embed", "Canonical embedding of a partial function");
  emb->add_option("--structure", a->structure)->required();
  emb->add_option("--function", a->function, "x:f(x),... pairs")->required();
  emb->add_option("--phi0", a->phi0, "Binary predicate (default: d(f(x), y) on the domain, 1 elsewhere)");
  verbs.push_back({emb, [a] {
                     auto m = load_structure(a->structure);
                     std::vector<std::pair<Element, Element>> f;
                     for (const auto& pair : split_list(a->function)) {
                       auto c = pair.find(':');
                       if (c == std::string::npos) throw Error("--function expects x:f(x) pairs");
                       f.push_back({m.element(pair.substr(0, c)), m.element(pair.substr(c + 1))});
                     }
                     Table phi0(m.size(), 2, Rational(1));
                     if (!a->phi0.empty()) {
                       phi0 = table_arg(m, a->phi0);
                     } else {
                       for (const auto& [x, fx] : f)
                         for (Element y = 0; y < m.size(); ++y) phi0(x, y) = m.dist(fx, y);
                     }
                     auto e = canonical_embed(m, f, phi0);
                     Report out;
                     out.body["sort_size"] = e.sort.size();
                     Json theta = Json::object();
                     for (Element y = 0; y < m.size(); ++y) theta[m.name(y)] = e.theta[y];
                     Json fh = Json::object();
                     for (Element x = 0; x < m.size(); ++x) fh[m.name(x)] = e.f_hat[x];
                     out.body["theta"] = theta;
                     out.body["f_hat"] = fh;
                     out.body["eq1_ok"] = e.eq1_ok;
                     out.body["theta_isometric"] = e.theta_isometric;
                     out.body["f_hat_matches"] = e.f_hat_matches;
                     out.body["phi_is_distance"] = e.phi_is_distance;
                     out.pass = e.eq1_ok && e.theta_isometric && e.f_hat_matches && e.phi_is_distance;
                     return out;
                   }});
}

}  // namespace contologic::cli
