#include <map>
#include <memory>

#include "cli_support.hpp"
#include "contologic/model_io.hpp"

namespace contologic::cli {

namespace {

struct Args {
  std::string space, eps, r, x, y, instance, delta;
};

Json issues_json(const SpaceReport& r) {
  Json out = Json::array();
  for (const auto& i : r.issues) out.push_back({{"kind", i.kind}, {"witness", i.witness}, {"detail", i.detail}});
  return out;
}

Json optional_json(const std::optional<unsigned>& v) { return v ? Json(*v) : Json("undefined"); }

TreeClusterSpace checked_space(const std::string& path) {
  auto t = load_space(path);
  auto r = check_space(t);
  if (!r.ok) throw Error(path + ": invalid space: " + r.issues.front().kind + " " + r.issues.front().detail);
  return t;
}

NodeSet labels_to_nodes(const TreeClusterSpace& t, const Json& labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < t.nodes().size(); ++i) index[t.node(i).label] = i;
  NodeSet out;
  for (const auto& l : labels) {
    auto it = index.find(l.get<std::string>());
    if (it == index.end()) throw Error("unknown node label '" + l.get<std::string>() + "'");
    out.insert(it->second);
  }
  return out;
}

}  // namespace

void register_rank_verbs(CLI::App& app, std::vector<Verb>& verbs) {
  auto a = std::make_shared<Args>();

  auto* rank = app.add_subcommand("rank", "eps-Cantor-Bendixson rank and degree");
  rank->add_option("--space", a->space)->required();
  rank->add_option("--eps", a->eps)->required();
  verbs.push_back({rank, [a] {
                     auto t = load_space(a->space);
                     auto check = check_space(t);
                     Report out;
                     out.body["space_ok"] = check.ok;
                     if (!check.ok) {
                       out.body["issues"] = issues_json(check);
                       out.pass = false;
                       return out;
                     }
                     auto r = cb_rank_degree(t, parse_rational(a->eps));
                     out.body["eps"] = a->eps;
                     out.body["rank"] = optional_json(r.rank);
                     out.body["degree"] = optional_json(r.degree);
                     Json top = Json::array();
                     for (auto i : r.top_roots) top.push_back(t.node(i).label);
                     out.body["top_roots"] = top;
                     Json nodes = Json::array();
                     for (std::size_t i = 0; i < t.nodes().size(); ++i)
                       nodes.push_back({t.node(i).label, to_string(t.node(i).scale), r.node_rank[i]});
                     out.body["nodes"] = nodes;
                     return out;
                   }});

  auto* grid = app.add_subcommand("rank-grid", "Find r' < r with RM_{r'} = RM_{r'-eps}");
  grid->add_option("--space", a->space)->required();
  grid->add_option("--r", a->r)->required();
  verbs.push_back({grid, [a] {
                     auto t = checked_space(a->space);
                     auto g = rank_grid(t, parse_rational(a->r));
                     Report out;
                     out.body["r_prime"] = to_string(g.r_prime);
                     out.body["eps"] = to_string(g.eps);
                     Json trace = Json::array();
                     for (const auto& [rn, rm] : g.trace) trace.push_back({to_string(rn), optional_json(rm)});
                     out.body["trace"] = trace;
                     return out;
                   }});

  auto* tr = app.add_subcommand("transfer", "Check a rank transfer instance between two spaces");
  tr->add_option("--x", a->x, "Left space")->required();
  tr->add_option("--y", a->y, "Right space")->required();
  tr->add_option("--instance", a->instance, "JSON: pairs, K, F (node labels), eps, delta")->required();
  verbs.push_back({tr, [a] {
                     auto X = checked_space(a->x);
                     auto Y = checked_space(a->y);
                     Json j = read_json_file(a->instance);
                     NodeRelation R;
                     for (const auto& p : j.at("pairs")) {
                       auto l = labels_to_nodes(X, Json::array({p.at(0)}));
                       auto r = labels_to_nodes(Y, Json::array({p.at(1)}));
                       R.pairs.push_back({*l.begin(), *r.begin()});
                     }
                     NodeSet K = labels_to_nodes(X, j.at("K"));
                     NodeSet F = labels_to_nodes(Y, j.at("F"));
                     auto rep = verify_transfer(X, Y, R, K, F, json_rational(j.at("eps")), json_rational(j.at("delta")));
                     Report out;
                     out.body["closed"] = rep.closed;
                     out.body["metric_hypothesis"] = rep.metric_hypothesis;
                     out.body["containment"] = rep.containment;
                     out.body["hypotheses_hold"] = rep.hypotheses_hold;
                     if (!rep.failure.empty()) out.body["failure"] = rep.failure;
                     out.body["rank_K"] = optional_json(rep.rank_K);
                     out.body["rank_F"] = optional_json(rep.rank_F);
                     out.body["conclusion"] = rep.conclusion;
                     out.pass = rep.hypotheses_hold && rep.conclusion;
                     return out;
                   }});
}

}  // namespace contologic::cli
