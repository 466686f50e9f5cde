#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "contologic/rational.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// Term: variable, constant symbol, or function application.
struct Term {
  enum class Kind { Variable, Constant, Function };
  Kind kind = Kind::Variable;
  std::string name;
  std::vector<Term> args;

  bool operator==(const Term&) const = default;
};

/// Continuous-logic formula.
struct Formula {
  enum class Kind {
    Constant,   // rational in [0,1]
    Distance,   // d(t, t')
    Predicate,  // P(t..)
    Not,        // 1 - x
    Min,
    Max,
    TSub,       // x -. y
    TAdd,       // x +. y
    Scale,      // q * x, truncated at 1
    AbsDiff,    // |x - y|
    Sup,
    Inf,
  };

  Kind kind = Kind::Constant;
  Rational value;                 // Constant, Scale factor
  std::string name;               // predicate symbol, bound variable
  std::vector<Term> terms;        // Distance, Predicate
  std::vector<Formula> children;  // connectives and quantifier body

  bool operator==(const Formula&) const = default;

  // builders
  static Formula constant(const Rational& q);
  static Formula distance(Term a, Term b);
  static Formula predicate(std::string name, std::vector<Term> args);
  static Formula unary(Kind kind, Formula f);
  static Formula binary(Kind kind, Formula a, Formula b);
  static Formula scale(const Rational& q, Formula f);
  static Formula quantifier(Kind kind, std::string var, Formula body);
};

Term var(std::string name);

/// Syntax error, unknown symbol or arity mismatch, with byte offset.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Parses the ASCII grammar (Unicode aliases for the connectives are
/// accepted too):
///   expr    := or
///   or      := and  (("\/" | "max") and)*
///   and     := add  (("/\" | "min") add)*
///   add     := scal (("-." | "+.") scal)*
///   scal    := RATIONAL "*" scal | unary
///   unary   := "not" unary | primary
///   primary := ("sup"|"inf") IDENT "." expr | RATIONAL | "d(" term "," term ")"
///            | P "(" term,.. ")" | P | "(" expr ")" | "|" expr "-" expr "|"
/// Quantifiers extend as far right as possible.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Canonical text; parse_formula(format_formula(f)) == f.
std::string format_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

using Assignment = std::map<std::string, Element>;

/// Exact value of f in m under a. Quantifiers range over the whole universe.
Rational eval_formula(const Formula& f, const FiniteStructure& m, const Assignment& a = {});

/// Upper bound on |f(a) - f(b)| when every free variable moves by at most t,
/// obtained by composing the declared moduli along the syntax tree.
Rational composed_modulus(const Formula& f, const FiniteStructure& m, const Rational& t);

/// Table of f over universe^k for the given ordered free variables.
Table formula_table(const Formula& f, const FiniteStructure& m, const std::vector<std::string>& vars);

}  // namespace contologic
