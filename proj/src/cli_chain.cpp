#include <memory>

#include "cli_support.hpp"
#include "contologic/demo.hpp"
#include "contologic/model_io.hpp"

namespace contologic::cli {

namespace {

struct Args {
  std::string chain, eps, x0, n_of_m, structure, family, candidates;
  unsigned m0 = 0;
  std::vector<std::string> samples;
};

Json alpha_json(const std::optional<std::size_t>& a) { return a ? Json(*a) : Json("none"); }

}  // namespace

void register_chain_verbs(CLI::App& app, std::vector<Verb>& verbs) {
  auto a = std::make_shared<Args>();

  auto* chain = app.add_subcommand("chain", "Approximate stabilization of a descending chain");
  chain->add_option("--chain", a->chain)->required();
  chain->add_option("--eps", a->eps, "Report alpha_eps and the limit equivalence at this eps");
  chain->add_option("--x0", a->x0, "Chase a limit point from x0");
  chain->add_option("--m0", a->m0, "Starting index for the chase");
  chain->add_option("--n-of-m", a->n_of_m, "Stabilization indices n_0,n_1,... (default n_m = m)");
  verbs.push_back({chain, [a] {
                     auto c = load_chain(a->chain);
                     const auto& m = c.space;
                     Report out;
                     auto lim = definable_limit(c);
                     out.body["limit"] = set_json(m, lim.limit);
                     Json table = Json::array();
                     for (const auto& row : lim.table)
                       table.push_back({to_string(row.eps), row.alpha, row.inside_limit_ball});
                     out.body["alpha_table"] = table;
                     out.body["distance_certified"] = lim.certificate.pass;
                     out.pass = lim.certified;
                     if (!a->eps.empty()) {
                       Rational eps = parse_rational(a->eps);
                       auto s = approx_stabilizes(c, eps);
                       auto e = limit_equivalence(c, eps);
                       out.body["alpha"] = alpha_json(s.alpha);
                       if (s.below)
                         out.body["alpha_minus_one_fails"] = {s.below->alpha, s.below->beta, m.name(s.below->point),
                                                              to_string(s.below->distance)};
                       out.body["equivalence"] = {{"alpha_all", alpha_json(e.alpha_all)},
                                                  {"alpha_limit", alpha_json(e.alpha_limit)},
                                                  {"equivalent", e.equivalent}};
                       out.pass = out.pass && e.equivalent;
                     }
                     if (!a->x0.empty()) {
                       std::vector<std::size_t> table;
                       for (const auto& s : split_list(a->n_of_m)) table.push_back(std::stoul(s));
                       auto n_of_m = [table](std::size_t k) {
                         if (table.empty()) return k;
                         return k < table.size() ? table[k] : table.back();
                       };
                       LazyChain lazy{c.space, [&c](std::size_t i) { return c.sets.at(std::min(i, c.sets.size() - 1)); },
                                      c.sets.size()};
                       auto ch = chase_limit_point(lazy, n_of_m, m.element(a->x0), a->m0);
                       Json trace = Json::array();
                       for (const auto& st : ch.trace)
                         trace.push_back({st.k, st.member, m.name(st.point), to_string(st.gap), to_string(st.bound)});
                       out.body["chase"] = {{"limit", m.name(ch.limit)}, {"distance", to_string(ch.distance)},
                                            {"bound", to_string(pow2_neg(a->m0))}, {"trace", trace}};
                     }
                     return out;
                   }});

  auto* fam = app.add_subcommand("family-limit", "Limit of a nondecreasing family of predicates");
  fam->add_option("--structure", a->structure)->required();
  fam->add_option("--family", a->family, "Predicates in order, comma separated")->required();
  fam->add_option("--candidates", a->candidates, "Predicates searched for the limit");
  verbs.push_back({fam, [a] {
                     auto m = load_structure(a->structure);
                     std::vector<Table> family, candidates;
                     for (const auto& n : split_list(a->family)) family.push_back(table_arg(m, n));
                     auto cnames = split_list(a->candidates);
                     for (const auto& n : cnames) candidates.push_back(table_arg(m, n));
                     auto r = uniform_family_limit(m, family, candidates);
                     Report out;
                     out.body["limit"] = table_json(m, r.limit);
                     out.body["uniform"] = r.uniform;
                     out.body["instance"] = r.instance ? Json(cnames[*r.instance]) : Json("none");
                     out.body["zero_set"] = set_json(m, r.zero_set);
                     out.body["zero_intersection"] = set_json(m, r.zero_intersection);
                     out.body["zero_sets_agree"] = r.zero_sets_agree;
                     out.body["distance_predicate"] = r.distance_predicate;
                     out.pass = r.zero_sets_agree;
                     return out;
                   }});

  auto* demo = app.add_subcommand("demo", "P(qa) from r = r+ - r- (0 * inf = 0)");
  demo->add_option("--sample", a->samples, "r:q pairs, r may be inf or -inf (repeatable)");
  verbs.push_back({demo, [a] {
                     std::vector<std::pair<ExtRational, Rational>> samples;
                     if (a->samples.empty()) {
                       samples = {{ExtRational::finite(Rational(1, 2)), 1},
                                  {ExtRational::finite(Rational(1, 2)), 3},
                                  {ExtRational::pos_inf(), 0}};
                     }
                     for (const auto& s : a->samples) {
                       auto c = s.find(':');
                       if (c == std::string::npos) throw Error("--sample expects r:q");
                       samples.push_back({parse_ext_rational(s.substr(0, c)), parse_rational(s.substr(c + 1))});
                     }
                     Report out;
                     Json rows = Json::array();
                     for (const auto& row : demo_example01(samples))
                       rows.push_back({{"r", to_string(row.r)}, {"r_plus", to_string(row.r_plus)},
                                       {"r_minus", to_string(row.r_minus)}, {"q", to_string(row.q)},
                                       {"qr", to_string(row.qr)}, {"case", row.branch},
                                       {"P", to_string(row.value)}});
                     out.body["rows"] = rows;
                     return out;
                   }});
}

}  // namespace contologic::cli
