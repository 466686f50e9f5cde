#include "contologic/structure.hpp"

#include <algorithm>
#include <set>

namespace contologic {

std::size_t tuple_count(std::size_t universe, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= universe;
  return n;
}

Table::Table(std::size_t universe_size, std::size_t arity_, const Rational& fill)
    : universe(universe_size), arity(arity_), values(tuple_count(universe_size, arity_), fill) {}

std::size_t Table::index(std::span<const Element> args) const {
  if (args.size() != arity) throw Error("table lookup with wrong arity");
  std::size_t flat = 0;
  for (Element e : args) {
    if (e >= universe) throw Error("table lookup outside universe");
    flat = flat * universe + e;
  }
  return flat;
}

Tuple Table::tuple(std::size_t flat) const {
  Tuple out(arity);
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = flat % universe;
    flat /= universe;
  }
  return out;
}

const PredicateSymbol* Signature::find_predicate(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const FunctionSymbol* Signature::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

Element FiniteStructure::element(const std::string& n) const {
  auto it = std::find(universe.begin(), universe.end(), n);
  if (it == universe.end()) throw Error("unknown element '" + n + "'");
  return static_cast<Element>(it - universe.begin());
}

const Table& FiniteStructure::predicate(const std::string& n) const {
  auto it = predicates.find(n);
  if (it == predicates.end()) throw Error("unknown predicate '" + n + "'");
  return it->second;
}

const std::vector<Element>& FiniteStructure::function(const std::string& n) const {
  auto it = functions.find(n);
  if (it == functions.end()) throw Error("unknown function '" + n + "'");
  return it->second;
}

Rational FiniteStructure::tuple_distance(std::size_t arity, std::size_t a, std::size_t b) const {
  Rational best = 0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < arity; ++i) {
    const Rational& di = metric(a % n, b % n);
    if (di > best) best = di;
    a /= n;
    b /= n;
  }
  return best;
}

std::string FiniteStructure::tuple_name(std::size_t arity, std::size_t flat) const {
  Table shape(size(), arity);
  Tuple t = shape.tuple(flat);
  if (arity == 1) return name(t[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += name(t[i]);
  }
  return out + ")";
}

void FiniteStructure::set_predicate(const std::string& n, Table table, PLMap modulus) {
  if (table.universe != size()) throw Error("predicate table over the wrong universe");
  auto& preds = signature.predicates;
  auto it = std::find_if(preds.begin(), preds.end(), [&](const auto& p) { return p.name == n; });
  if (it == preds.end())
    preds.push_back({n, table.arity, std::move(modulus)});
  else
    *it = {n, table.arity, std::move(modulus)};
  predicates[n] = std::move(table);
}

FiniteStructure make_metric_space(std::vector<std::string> names, Table metric) {
  FiniteStructure m;
  m.universe = std::move(names);
  if (metric.arity != 2 || metric.universe != m.universe.size())
    throw Error("metric table has the wrong shape");
  m.metric = std::move(metric);
  return m;
}

namespace {

void add_once(StructureReport& report, std::set<std::pair<std::string, std::string>>& seen,
              Violation v) {
  report.ok = false;
  if (seen.insert({v.kind, v.symbol}).second) report.violations.push_back(std::move(v));
}

/// Visits all pairs of tuples that differ in exactly one argument position
/// (a < b in that position).
template <class Visit>
void for_argumentwise_pairs(std::size_t universe, std::size_t arity, Visit&& visit) {
  Table shape(universe, arity);
  for (std::size_t flat = 0; flat < shape.size(); ++flat) {
    Tuple t = shape.tuple(flat);
    for (std::size_t pos = 0; pos < arity; ++pos) {
      for (Element e = t[pos] + 1; e < universe; ++e) {
        Tuple u = t;
        u[pos] = e;
        visit(flat, shape.index(u), t[pos], e);
      }
    }
  }
}

}  // namespace

StructureReport check_metric(const Table& d, const std::vector<std::string>& names,
                             bool require_separation) {
  StructureReport report;
  std::set<std::pair<std::string, std::string>> seen;
  const std::size_t n = d.universe;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (!truth::in_unit_interval(d(x, y)))
        add_once(report, seen, {"range", "d", {names[x], names[y]}, to_string(d(x, y))});
      if (x == y && d(x, y) != 0)
        add_once(report, seen, {"reflexivity", "d", {names[x]}, to_string(d(x, y))});
      if (require_separation && x != y && d(x, y) == 0)
        add_once(report, seen, {"separation", "d", {names[x], names[y]}, "distinct points at distance 0"});
      if (d(x, y) != d(y, x))
        add_once(report, seen, {"symmetry", "d", {names[x], names[y]},
                                to_string(d(x, y)) + " != " + to_string(d(y, x))});
    }
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (d(x, y) > d(x, z) + d(z, y))
          add_once(report, seen,
                   {"triangle", "d", {names[x], names[z], names[y]},
                    to_string(d(x, y)) + " > " + to_string(d(x, z)) + " + " + to_string(d(z, y))});
  return report;
}

namespace {

std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

bool is_pseudometric(const Table& d) { return check_metric(d, index_names(d.universe), false).ok; }
bool is_metric(const Table& d) { return check_metric(d, index_names(d.universe), true).ok; }

StructureReport check_structure(const FiniteStructure& m) {
  StructureReport report = check_metric(m.metric, m.universe, true);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& v : report.violations) seen.insert({v.kind, v.symbol});
  const std::size_t n = m.size();

  for (const auto& sym : m.signature.predicates) {
    auto it = m.predicates.find(sym.name);
    if (it == m.predicates.end()) {
      add_once(report, seen, {"missing", sym.name, {}, "no table"});
      continue;
    }
    const Table& t = it->second;
    if (t.arity != sym.arity || t.universe != n) {
      add_once(report, seen, {"shape", sym.name, {}, "table shape disagrees with signature"});
      continue;
    }
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!truth::in_unit_interval(t[i]))
        add_once(report, seen, {"range", sym.name, {m.tuple_name(t.arity, i)}, to_string(t[i])});
    for_argumentwise_pairs(n, t.arity, [&](std::size_t a, std::size_t b, Element x, Element y) {
      Rational diff = truth::absdiff(t[a], t[b]);
      Rational bound = sym.modulus(m.dist(x, y));
      if (diff > bound)
        add_once(report, seen,
                 {"modulus", sym.name, {m.tuple_name(t.arity, a), m.tuple_name(t.arity, b)},
                  to_string(diff) + " > " + to_string(bound)});
    });
  }

  for (const auto& sym : m.signature.functions) {
    auto it = m.functions.find(sym.name);
    if (it == m.functions.end() || it->second.size() != tuple_count(n, sym.arity)) {
      add_once(report, seen, {"shape", sym.name, {}, "function table missing or wrong size"});
      continue;
    }
    const auto& f = it->second;
    bool in_range = true;
    for (Element v : f)
      if (v >= n) in_range = false;
    if (!in_range) {
      add_once(report, seen, {"range", sym.name, {}, "function value outside universe"});
      continue;
    }
    for_argumentwise_pairs(n, sym.arity, [&](std::size_t a, std::size_t b, Element x, Element y) {
      const Rational& diff = m.dist(f[a], f[b]);
      Rational bound = sym.modulus(m.dist(x, y));
      if (diff > bound)
        add_once(report, seen,
                 {"modulus", sym.name, {m.tuple_name(sym.arity, a), m.tuple_name(sym.arity, b)},
                  to_string(diff) + " > " + to_string(bound)});
    });
  }
  for (const auto& c : m.signature.constants)
    if (!m.constants.count(c)) add_once(report, seen, {"missing", c, {}, "constant not interpreted"});
  return report;
}

namespace {

PLMap cumulative_step_map(std::vector<std::pair<Rational, Rational>> samples) {
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Breakpoint> points{{0, 0}};
  Rational running = 0;
  for (const auto& [t, diff] : samples) {
    if (diff > running) running = diff;
    if (t == 0) {
      points.front().y = running;
      continue;
    }
    if (points.back().x == t)
      points.back().y = running;
    else
      points.push_back({t, running});
  }
  if (points.back().x != 1) points.push_back({1, running});
  return PLMap(std::move(points), Interpolation::StepRight);
}

}  // namespace

PLMap realized_modulus(const Table& table, const Table& metric) {
  std::vector<std::pair<Rational, Rational>> samples;
  for_argumentwise_pairs(table.universe, table.arity,
                         [&](std::size_t a, std::size_t b, Element x, Element y) {
                           samples.emplace_back(metric(x, y), truth::absdiff(table[a], table[b]));
                         });
  return cumulative_step_map(std::move(samples));
}

PLMap realized_modulus(const FiniteStructure& m, const std::string& predicate) {
  return realized_modulus(m.predicate(predicate), m.metric);
}

PLMap realized_function_modulus(const FiniteStructure& m, const std::string& function) {
  const FunctionSymbol* sym = m.signature.find_function(function);
  if (!sym) throw Error("unknown function '" + function + "'");
  const auto& f = m.function(function);
  std::vector<std::pair<Rational, Rational>> samples;
  for_argumentwise_pairs(m.size(), sym->arity, [&](std::size_t a, std::size_t b, Element x, Element y) {
    samples.emplace_back(m.dist(x, y), m.dist(f[a], f[b]));
  });
  return cumulative_step_map(std::move(samples));
}

}  // namespace contologic
