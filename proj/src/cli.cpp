#include "contologic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "cli_support.hpp"

namespace contologic {

namespace cli {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

PointSet set_arg(const FiniteStructure& m, const std::string& list) {
  std::vector<Element> es;
  for (const auto& name : split_list(list)) es.push_back(m.element(name));
  return PointSet::of(std::move(es));
}

Element element_arg(const FiniteStructure& m, const std::string& name) { return m.element(name); }

const Table& table_arg(const FiniteStructure& m, const std::string& name) {
  if (name == "d") return m.metric;
  return m.predicate(name);
}

Json set_json(const FiniteStructure& m, const PointSet& s) {
  Json out = Json::array();
  Table shape(m.size(), s.arity);
  for (std::size_t i : s.members) {
    std::string name;
    for (Element e : shape.tuple(i)) name += (name.empty() ? "" : ",") + m.name(e);
    out.push_back(name);
  }
  return out;
}

Json unary_json(const FiniteStructure& m, const Table& t) {
  Json out = Json::object();
  for (Element x = 0; x < m.size(); ++x) out[m.name(x)] = to_string(t[x]);
  return out;
}

Json matrix_json(const FiniteStructure& m, const Table& t) {
  Json out = Json::array();
  for (Element a = 0; a < m.size(); ++a)
    for (Element b = a + 1; b < m.size(); ++b) out.push_back({m.name(a), m.name(b), to_string(t(a, b))});
  return out;
}

Json report_json(const StructureReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", x.kind}, {"symbol", x.symbol}, {"witness", x.witness}, {"detail", x.detail}});
  return Json{{"ok", r.ok}, {"violations", v}};
}

std::vector<Verb> register_verbs(CLI::App& app) {
  std::vector<Verb> verbs;
  register_structure_verbs(app, verbs);
  register_metric_verbs(app, verbs);
  register_rank_verbs(app, verbs);
  register_group_verbs(app, verbs);
  register_chain_verbs(app, verbs);
  return verbs;
}

namespace {

bool scalar_list(const Json& j) {
  for (const auto& v : j)
    if (v.is_structured()) return false;
  return true;
}

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string inline_list(const Json& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar(j[i]);
  return s + "]";
}

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string key = j.is_object() ? it.key() + ":" : "-";
    if (!v.is_structured()) {
      out += pad + key + " " + scalar(v) + "\n";
    } else if (v.is_array() && scalar_list(v)) {
      out += pad + key + " " + inline_list(v) + "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& r) { return r.is_array() && scalar_list(r); })) {
      out += pad + key + "\n";
      for (const auto& row : v) out += pad + "  " + inline_list(row) + "\n";
    } else {
      out += pad + key + "\n";
      render(v, indent + 2, out);
    }
  }
}

}  // namespace

}  // namespace cli

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite-scale continuous logic toolkit", "contologic"};
  app.require_subcommand(1);
  bool json = false;
  std::string golden;
  app.add_flag("--json", json, "Emit the machine-readable JSON report");
  app.add_option("--golden", golden, "Compare the report against a stored file");
  std::vector<cli::Verb> verbs;
  try {
    verbs = cli::register_verbs(app);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  for (auto& v : verbs) v.app->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::stringstream o, r;
    int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 2;
  }

  cli::Report report;
  try {
    for (auto& v : verbs)
      if (v.app->parsed()) report = v.handler();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  report.body["verdict"] = report.pass ? "pass" : "fail";

  std::string text;
  if (json) {
    text = report.body.dump(2) + "\n";
  } else {
    cli::render(report.body, 0, text);
  }
  out << text;
  if (!golden.empty()) {
    std::ifstream in(golden, std::ios::binary);
    if (!in) {
      err << "error: cannot open golden file '" << golden << "'\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str() != text) {
      err << "golden mismatch: " << golden << "\n";
      return 1;
    }
  }
  return report.pass ? 0 : 1;
}

}  // namespace contologic
