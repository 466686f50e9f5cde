#include <memory>

#include "cli_support.hpp"
#include "contologic/metric_forge.hpp"

namespace contologic::cli {

namespace {

struct Args {
  std::string structure, predicate, set, d1, d2, psi1, phi;
  bool metric_mode = false;
};

const Table& binary_arg(const FiniteStructure& m, const std::string& name) {
  if (!name.empty()) return table_arg(m, name);
  const PredicateSymbol* only = nullptr;
  for (const auto& p : m.signature.predicates)
    if (p.arity == 2) {
      if (only) throw Error("several binary predicates; pick one with --predicate");
      only = &p;
    }
  if (!only) throw Error("no binary predicate in the structure");
  return m.predicate(only->name);
}

Json hypotheses_json(const GHypotheses& h) {
  Json strong = Json::array(), weak = Json::array();
  for (const auto& t : h.strong_failures) strong.push_back(to_string(t));
  for (const auto& t : h.weak_failures) weak.push_back(to_string(t));
  return Json{{"strong", h.strong},       {"weak", h.weak},       {"right_slack", h.right_slack},
              {"top_saturated", h.top_saturated}, {"symmetric", h.symmetric}, {"monotone", h.monotone},
              {"strong_failures", strong}, {"weak_failures", weak}};
}

}  // namespace

void register_metric_verbs(CLI::App& app, std::vector<Verb>& verbs) {
  auto a = std::make_shared<Args>();

  auto* rep = app.add_subcommand("repair-metric", "Repair a symmetric reflexive predicate into a pseudometric");
  rep->add_option("--structure", a->structure)->required();
  rep->add_option("--predicate", a->predicate, "Binary predicate (default: the only one)");
  verbs.push_back({rep, [a] {
                     auto m = load_structure(a->structure);
                     const Table& phi = binary_arg(m, a->predicate);
                     auto c = repair_pseudometric(phi);
                     Report out;
                     out.body["already_pseudometric"] = c.already_pseudometric;
                     if (c.f) {
                       out.body["level"] = c.level;
                       out.body["strategy"] = c.strategy == FStrategy::GridHugging ? "grid-hugging" : "complete-minimal";
                       Json f = Json::array();
                       for (std::size_t k = 0; k < c.f->values.size(); ++k)
                         f.push_back({to_string(c.f->point(k)), to_string(c.f->values[k])});
                       out.body["f"] = f;
                     }
                     out.body["h"] = modulus_json(c.h);
                     out.body["hypotheses"] = hypotheses_json(c.hypotheses);
                     out.body["table"] = matrix_json(m, c.table);
                     out.body["triangle_ok"] = c.triangle_ok;
                     out.body["separating_input"] = c.separating_input;
                     out.body["is_metric"] = c.is_metric;
                     out.body["linear_triangle_ok"] = c.linear_triangle_ok;
                     out.pass = c.triangle_ok && (!c.separating_input || c.is_metric);
                     return out;
                   }});

  auto* sup = app.add_subcommand("repair-sup", "Pseudometric max_z |phi(x,z) - phi(y,z)|");
  sup->add_option("--structure", a->structure)->required();
  sup->add_option("--predicate", a->predicate, "Binary predicate (default: the only one)");
  verbs.push_back({sup, [a] {
                     auto m = load_structure(a->structure);
                     Table t = repair_via_sup(binary_arg(m, a->predicate));
                     Report out;
                     out.body["table"] = matrix_json(m, t);
                     out.body["pseudometric"] = is_pseudometric(t);
                     out.pass = is_pseudometric(t);
                     return out;
                   }});

  auto* ext = app.add_subcommand("extend-metric", "Extend a metric from X, or iterate its approximations");
  ext->add_option("--structure", a->structure)->required();
  ext->add_option("--set", a->set, "X")->required();
  ext->add_option("--d1", a->d1, "Metric on X (binary predicate)")->required();
  ext->add_option("--psi1", a->psi1, "Total binary predicate extending d1")->required();
  ext->add_flag("--metric-mode", a->metric_mode, "Combine with the separator metric");
  ext->add_option("--phi", a->phi, "Unary predicate with zero set X: report the approximations d_{2,n}");
  verbs.push_back({ext, [a] {
                     auto m = load_structure(a->structure);
                     PointSet X = set_arg(m, a->set);
                     const Table& d1 = table_arg(m, a->d1);
                     const Table& psi1 = table_arg(m, a->psi1);
                     Table d2 = extend_partial_metric(m, X, d1, psi1, a->metric_mode);
                     Report out;
                     out.body["extension"] = matrix_json(m, d2);
                     out.body["pseudometric"] = is_pseudometric(d2);
                     out.body["metric"] = is_metric(d2);
                     out.pass = is_pseudometric(d2) && (!a->metric_mode || is_metric(d2));
                     if (!a->phi.empty()) {
                       const Table& phi = table_arg(m, a->phi);
                       Table plain = a->metric_mode ? extend_partial_metric(m, X, d1, psi1, false) : d2;
                       unsigned stop = stabilization_index(phi);
                       Json steps = Json::array();
                       bool nonincreasing = true;
                       Table prev;
                       for (unsigned n = 0; n <= stop; ++n) {
                         Table t = approximating_pseudometric(m, X, d1, psi1, phi, n);
                         if (n > 0)
                           for (std::size_t i = 0; i < t.size(); ++i) nonincreasing = nonincreasing && t[i] <= prev[i];
                         steps.push_back({{"n", n}, {"table", matrix_json(m, t)}});
                         prev = std::move(t);
                       }
                       out.body["stabilization_index"] = stop;
                       out.body["approximations"] = steps;
                       out.body["nonincreasing"] = nonincreasing;
                       out.body["stabilizes_at_extension"] = prev == plain;
                       out.pass = out.pass && nonincreasing && prev == plain;
                     }
                     return out;
                   }});

  auto* eq = app.add_subcommand("equiv-modulus", "Uniform equivalence moduli between two metrics");
  eq->add_option("--structure", a->structure)->required();
  eq->add_option("--d1", a->d1)->required();
  eq->add_option("--d2", a->d2)->required();
  verbs.push_back({eq, [a] {
                     auto m = load_structure(a->structure);
                     const Table& d1 = table_arg(m, a->d1);
                     const Table& d2 = table_arg(m, a->d2);
                     Report out;
                     out.body["d1_from_d2"] = modulus_json(uniform_equivalence_modulus(d1, d2));
                     out.body["d2_from_d1"] = modulus_json(uniform_equivalence_modulus(d2, d1));
                     return out;
                   }});

  auto* swap = app.add_subcommand("swap-metric", "Make a predicate the metric; the old metric becomes d2");
  swap->add_option("--structure", a->structure)->required();
  swap->add_option("--d1", a->d1, "Binary predicate that is a metric")->required();
  verbs.push_back({swap, [a] {
                     auto m = load_structure(a->structure);
                     auto s = swap_metric(m, table_arg(m, a->d1));
                     auto r = check_structure(s);
                     Report out;
                     out.body["structure"] = structure_json(s);
                     out.body["check"] = report_json(r);
                     out.pass = r.ok;
                     return out;
                   }});
}

}  // namespace contologic::cli
