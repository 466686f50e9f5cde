#include "contologic/structure_io.hpp"

#include <fstream>
#include <sstream>

namespace contologic {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error("expected a rational \"num/den\", got " + v.dump());
}

Json rational_json(const Rational& q) { return to_string(q); }

namespace {

Interpolation interpolation_from_string(const std::string& s) {
  if (s == "linear") return Interpolation::Linear;
  if (s == "step-left-continuous") return Interpolation::StepLeft;
  if (s == "step-right-continuous") return Interpolation::StepRight;
  throw Error("unknown interpolation mode '" + s + "'");
}

std::vector<Breakpoint> breakpoints_from_json(const Json& v) {
  if (!v.is_array()) throw Error("breakpoint list must be an array");
  std::vector<Breakpoint> out;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) throw Error("breakpoint must be [x, y]");
    out.push_back({json_rational(p[0]), json_rational(p[1])});
  }
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::size_t arity_of(const Json& spec) {
  const Json& a = require(spec, "arity");
  if (!a.is_number_unsigned() && !(a.is_number_integer() && a.get<long>() >= 0))
    throw Error("arity must be a nonnegative integer");
  return a.get<std::size_t>();
}

Element element_of(const FiniteStructure& m, const Json& v) {
  if (!v.is_string()) throw Error("element names must be strings, got " + v.dump());
  return m.element(v.get<std::string>());
}

}  // namespace

PLMap modulus_from_json(const Json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "identity") return PLMap::identity();
    if (s == "zero") return PLMap::zero();
    const std::string prefix = "lipschitz ";
    if (s.rfind(prefix, 0) == 0) return PLMap::lipschitz(parse_rational(s.substr(prefix.size())));
    throw Error("unknown modulus '" + s + "'");
  }
  if (v.is_array()) return PLMap(breakpoints_from_json(v), Interpolation::Linear);
  if (v.is_object())
    return PLMap(breakpoints_from_json(require(v, "breakpoints")),
                 interpolation_from_string(require(v, "interpolation").get<std::string>()));
  throw Error("malformed modulus " + v.dump());
}

Json modulus_json(const PLMap& m) {
  if (m.lipschitz_constant()) return "lipschitz " + to_string(*m.lipschitz_constant());
  Json points = Json::array();
  for (const auto& b : m.breakpoints()) points.push_back({to_string(b.x), to_string(b.y)});
  return Json{{"interpolation", to_string(m.mode())}, {"breakpoints", points}};
}

std::vector<Element> elements_from_json(const FiniteStructure& m, const Json& v) {
  if (!v.is_array()) throw Error("element list must be an array");
  std::vector<Element> out;
  for (const auto& e : v) out.push_back(element_of(m, e));
  return out;
}

Table binary_table_from_json(const FiniteStructure& m, const Json& v, bool symmetric) {
  const std::size_t n = m.size();
  Table t(n, 2);
  std::vector<char> seen(n * n, 0);
  if (!v.is_array()) throw Error("binary table must be an array");
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != 3) throw Error("binary table rows are [a, b, \"n/d\"]");
    Element a = element_of(m, row[0]), b = element_of(m, row[1]);
    if (seen[a * n + b]) throw Error("duplicate entry for (" + m.name(a) + "," + m.name(b) + ")");
    t(a, b) = json_rational(row[2]);
    seen[a * n + b] = 1;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (seen[a * n + b]) continue;
      if (a == b && symmetric) continue;  // diagonal defaults to 0
      if (symmetric && seen[b * n + a]) {
        t(a, b) = t(b, a);
        continue;
      }
      throw Error("table missing entry (" + m.name(a) + "," + m.name(b) + ")");
    }
  }
  return t;
}

FiniteStructure structure_from_json(const Json& j) {
  FiniteStructure m;
  for (const auto& e : require(j, "universe")) {
    std::string name = e.get<std::string>();
    for (const auto& existing : m.universe)
      if (existing == name) throw Error("duplicate element '" + name + "'");
    m.universe.push_back(std::move(name));
  }
  if (m.universe.empty()) throw Error("universe must be nonempty");
  const std::size_t n = m.size();
  m.metric = n == 1 && !j.contains("metric") ? Table(1, 2) : binary_table_from_json(m, require(j, "metric"), true);

  if (j.contains("predicates")) {
    for (const auto& [name, spec] : j.at("predicates").items()) {
      if (m.signature.find_predicate(name)) throw Error("duplicate predicate '" + name + "'");
      std::size_t arity = arity_of(spec);
      PLMap modulus = spec.contains("modulus") ? modulus_from_json(spec.at("modulus")) : PLMap::identity();
      Table t(n, arity);
      std::vector<char> seen(t.size(), 0);
      for (const auto& row : require(spec, "table")) {
        if (!row.is_array() || row.size() != arity + 1)
          throw Error("predicate '" + name + "': rows are [args..., \"n/d\"]");
        Tuple args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(element_of(m, row[i]));
        std::size_t flat = t.index(args);
        if (seen[flat]) throw Error("predicate '" + name + "': duplicate row " + row.dump());
        seen[flat] = 1;
        t[flat] = json_rational(row[arity]);
      }
      for (std::size_t i = 0; i < t.size(); ++i)
        if (!seen[i]) throw Error("predicate '" + name + "': missing row for " + m.tuple_name(arity, i));
      m.signature.predicates.push_back({name, arity, std::move(modulus)});
      m.predicates[name] = std::move(t);
    }
  }

  if (j.contains("functions")) {
    for (const auto& [name, spec] : j.at("functions").items()) {
      if (m.signature.find_function(name)) throw Error("duplicate function '" + name + "'");
      std::size_t arity = arity_of(spec);
      PLMap modulus = spec.contains("modulus") ? modulus_from_json(spec.at("modulus")) : PLMap::identity();
      Table shape(n, arity);
      std::vector<Element> values(shape.size(), 0);
      std::vector<char> seen(shape.size(), 0);
      for (const auto& row : require(spec, "table")) {
        if (!row.is_array() || row.size() != arity + 1)
          throw Error("function '" + name + "': rows are [args..., result]");
        Tuple args;
        for (std::size_t i = 0; i < arity; ++i) args.push_back(element_of(m, row[i]));
        std::size_t flat = shape.index(args);
        if (seen[flat]) throw Error("function '" + name + "': duplicate row " + row.dump());
        seen[flat] = 1;
        values[flat] = element_of(m, row[arity]);
      }
      for (std::size_t i = 0; i < values.size(); ++i)
        if (!seen[i]) throw Error("function '" + name + "': missing row for " + m.tuple_name(arity, i));
      m.signature.functions.push_back({name, arity, std::move(modulus)});
      m.functions[name] = std::move(values);
    }
  }

  if (j.contains("constants")) {
    for (const auto& [name, e] : j.at("constants").items()) {
      m.signature.constants.push_back(name);
      m.constants[name] = element_of(m, e);
    }
  }
  return m;
}

FiniteStructure load_structure(const std::filesystem::path& path) {
  try {
    return structure_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Json table_json(const FiniteStructure& m, const Table& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json row = Json::array();
    for (Element e : t.tuple(i)) row.push_back(m.name(e));
    row.push_back(to_string(t[i]));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json structure_json(const FiniteStructure& m) {
  Json j;
  j["universe"] = m.universe;
  Json metric = Json::array();
  for (Element a = 0; a < m.size(); ++a)
    for (Element b = a + 1; b < m.size(); ++b)
      metric.push_back({m.name(a), m.name(b), to_string(m.dist(a, b))});
  j["metric"] = metric;
  Json preds = Json::object();
  for (const auto& sym : m.signature.predicates)
    preds[sym.name] = {{"arity", sym.arity},
                       {"modulus", modulus_json(sym.modulus)},
                       {"table", table_json(m, m.predicate(sym.name))}};
  if (!preds.empty()) j["predicates"] = preds;
  Json funcs = Json::object();
  for (const auto& sym : m.signature.functions) {
    Json rows = Json::array();
    const auto& f = m.function(sym.name);
    Table shape(m.size(), sym.arity);
    for (std::size_t i = 0; i < f.size(); ++i) {
      Json row = Json::array();
      for (Element e : shape.tuple(i)) row.push_back(m.name(e));
      row.push_back(m.name(f[i]));
      rows.push_back(std::move(row));
    }
    funcs[sym.name] = {{"arity", sym.arity}, {"modulus", modulus_json(sym.modulus)}, {"table", rows}};
  }
  if (!funcs.empty()) j["functions"] = funcs;
  Json consts = Json::object();
  for (const auto& c : m.signature.constants) consts[c] = m.name(m.constants.at(c));
  if (!consts.empty()) j["constants"] = consts;
  return j;
}

}  // namespace contologic
