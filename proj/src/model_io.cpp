#include "contologic/model_io.hpp"

#include <algorithm>

namespace contologic {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Element element_of(const FiniteStructure& m, const Json& v) {
  if (!v.is_string()) throw Error("element names must be strings, got " + v.dump());
  return m.element(v.get<std::string>());
}

std::vector<Element> op_table(const FiniteStructure& m, const Json& rows, const std::vector<Element>& domain,
                              const char* what) {
  const std::size_t n = m.size();
  std::vector<Element> op(n * n, FiniteMetricGroup::none);
  if (!rows.is_array()) throw Error(std::string(what) + " must be an array");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 3) throw Error(std::string(what) + " rows are [a, b, ab]");
    Element a = element_of(m, row[0]), b = element_of(m, row[1]);
    if (op[a * n + b] != FiniteMetricGroup::none)
      throw Error(std::string(what) + ": duplicate entry for (" + m.name(a) + "," + m.name(b) + ")");
    op[a * n + b] = element_of(m, row[2]);
  }
  for (Element a : domain)
    for (Element b : domain)
      if (op[a * n + b] == FiniteMetricGroup::none)
        throw Error(std::string(what) + ": missing entry (" + m.name(a) + "," + m.name(b) + ")");
  return op;
}

TreeSpec tree_from_json(const Json& j) {
  TreeSpec t;
  t.scale = json_rational(require(j, "scale"));
  if (j.contains("children"))
    for (const auto& c : j.at("children")) t.children.push_back(tree_from_json(c));
  return t;
}

}  // namespace

FiniteMetricGroup group_from_json(const Json& j) {
  FiniteMetricGroup g;
  g.space = structure_from_json(j);
  const auto& m = g.space;
  const std::size_t n = m.size();
  if (j.contains("group")) {
    g.members = elements_from_json(m, j.at("group"));
    std::sort(g.members.begin(), g.members.end());
    if (std::adjacent_find(g.members.begin(), g.members.end()) != g.members.end())
      throw Error("duplicate element in \"group\"");
  } else {
    for (Element e = 0; e < n; ++e) g.members.push_back(e);
  }
  g.op = op_table(m, require(j, "op"), g.members, "op");
  g.identity = element_of(m, require(j, "identity"));
  g.inverse.assign(n, FiniteMetricGroup::none);
  for (const auto& row : require(j, "inverse")) {
    if (!row.is_array() || row.size() != 2) throw Error("inverse rows are [a, a^-1]");
    g.inverse[element_of(m, row[0])] = element_of(m, row[1]);
  }
  for (Element a : g.members)
    if (g.inverse[a] == FiniteMetricGroup::none) throw Error("inverse missing for " + m.name(a));
  if (j.contains("ambient_op")) {
    std::vector<Element> all(n);
    for (Element e = 0; e < n; ++e) all[e] = e;
    g.ambient_op = op_table(m, j.at("ambient_op"), all, "ambient_op");
  }
  return g;
}

FiniteMetricGroup load_group(const std::filesystem::path& path) {
  try {
    return group_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

TreeClusterSpace space_from_json(const Json& j) {
  std::vector<TreeSpec> trees;
  for (const auto& t : require(j, "trees")) trees.push_back(tree_from_json(t));
  const std::size_t k = trees.size();
  std::vector<std::vector<Rational>> D(k, std::vector<Rational>(k, Rational(1)));
  std::vector<std::vector<bool>> seen(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) D[i][i] = 0;
  if (j.contains("D"))
    for (const auto& row : j.at("D")) {
      if (!row.is_array() || row.size() != 3) throw Error("D rows are [i, j, \"n/d\"]");
      std::size_t a = row[0].get<std::size_t>(), b = row[1].get<std::size_t>();
      if (a >= k || b >= k) throw Error("D entry names a missing tree");
      if (a == b) throw Error("D entry on the diagonal");
      Rational v = json_rational(row[2]);
      D[a][b] = v;
      if (!seen[b][a]) D[b][a] = v;
      seen[a][b] = true;
    }
  return TreeClusterSpace(trees, std::move(D));
}

TreeClusterSpace load_space(const std::filesystem::path& path) {
  try {
    return space_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

DescendingChain load_chain(const std::filesystem::path& path) {
  try {
    Json j = read_json_file(path);
    DescendingChain c;
    std::filesystem::path s = require(j, "structure").get<std::string>();
    if (s.is_relative()) s = path.parent_path() / s;
    c.space = load_structure(s);
    for (const auto& names : require(j, "chain")) c.sets.push_back(PointSet::of(elements_from_json(c.space, names)));
    validate_chain(c);
    return c;
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  } catch (const Json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace contologic
