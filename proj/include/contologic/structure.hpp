#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "contologic/pl_map.hpp"
#include "contologic/rational.hpp"

namespace contologic {

using Element = std::size_t;
using Tuple = std::vector<Element>;

/// Total table universe^arity -> [0,1], stored row-major with the first
/// argument most significant.
struct Table {
  std::size_t universe = 0;
  std::size_t arity = 0;
  std::vector<Rational> values;

  Table() = default;
  Table(std::size_t universe_size, std::size_t arity_, const Rational& fill = Rational(0));

  std::size_t size() const { return values.size(); }
  std::size_t index(std::span<const Element> args) const;
  Tuple tuple(std::size_t flat) const;

  Rational& operator[](std::size_t flat) { return values[flat]; }
  const Rational& operator[](std::size_t flat) const { return values[flat]; }
  const Rational& at(std::span<const Element> args) const { return values[index(args)]; }
  Rational& at(std::span<const Element> args) { return values[index(args)]; }

  // binary convenience
  const Rational& operator()(Element x, Element y) const { return values[x * universe + y]; }
  Rational& operator()(Element x, Element y) { return values[x * universe + y]; }

  bool operator==(const Table&) const = default;
};

/// universe^arity
std::size_t tuple_count(std::size_t universe, std::size_t arity);

struct PredicateSymbol {
  std::string name;
  std::size_t arity = 0;
  PLMap modulus;
};

struct FunctionSymbol {
  std::string name;
  std::size_t arity = 0;
  PLMap modulus;
};

struct Signature {
  std::vector<PredicateSymbol> predicates;
  std::vector<FunctionSymbol> functions;
  std::vector<std::string> constants;

  const PredicateSymbol* find_predicate(const std::string& name) const;
  const FunctionSymbol* find_function(const std::string& name) const;
  bool has_constant(const std::string& name) const;
};

/// Finite metric structure: universe, metric table, predicate and function
/// tables and named constants. Tables are total.
struct FiniteStructure {
  Signature signature;
  std::vector<std::string> universe;
  Table metric;  // arity 2
  std::map<std::string, Table> predicates;
  std::map<std::string, std::vector<Element>> functions;  // universe^arity -> element
  std::map<std::string, Element> constants;

  std::size_t size() const { return universe.size(); }
  Element element(const std::string& name) const;
  const std::string& name(Element e) const { return universe.at(e); }
  const Rational& dist(Element x, Element y) const { return metric(x, y); }

  const Table& predicate(const std::string& name) const;
  const std::vector<Element>& function(const std::string& name) const;

  /// Max metric on universe^arity, for flat tuple indices.
  Rational tuple_distance(std::size_t arity, std::size_t a, std::size_t b) const;
  std::string tuple_name(std::size_t arity, std::size_t flat) const;

  /// Adds (or replaces) a predicate symbol together with its table.
  void set_predicate(const std::string& name, Table table, PLMap modulus);
};

/// Structure with the given element names and metric, no symbols.
FiniteStructure make_metric_space(std::vector<std::string> names, Table metric);

// ---------------------------------------------------------------------------
// Structure validation

struct Violation {
  std::string kind;    // reflexivity, separation, symmetry, triangle, range, modulus
  std::string symbol;  // "d" for the metric
  std::vector<std::string> witness;
  std::string detail;
};

struct StructureReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks the metric axioms exactly and that every symbol respects its
/// declared modulus argumentwise. Reports the first witness per
/// (kind, symbol).
StructureReport check_structure(const FiniteStructure& m);

/// Metric axioms only, for an arbitrary binary table.
StructureReport check_metric(const Table& d, const std::vector<std::string>& names,
                             bool require_separation = true);

bool is_pseudometric(const Table& d);
bool is_metric(const Table& d);

/// Pointwise-least nondecreasing step map Delta (right-continuous) with
/// |P(x..)-P(y..)| <= Delta(d(x_i,y_i)) for tuples differing in one argument.
PLMap realized_modulus(const FiniteStructure& m, const std::string& predicate);
PLMap realized_modulus(const Table& table, const Table& metric);
/// Same for a function symbol: d(f(x..), f(y..)) against argument distance.
PLMap realized_function_modulus(const FiniteStructure& m, const std::string& function);

}  // namespace contologic
