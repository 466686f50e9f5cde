#include "contologic/formula.hpp"

#include <cctype>
#include <optional>

namespace contologic {

using Kind = Formula::Kind;

Formula Formula::constant(const Rational& q) {
  Formula f;
  f.kind = Kind::Constant;
  f.value = q;
  return f;
}

Formula Formula::distance(Term a, Term b) {
  Formula f;
  f.kind = Kind::Distance;
  f.terms = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::predicate(std::string name, std::vector<Term> args) {
  Formula f;
  f.kind = Kind::Predicate;
  f.name = std::move(name);
  f.terms = std::move(args);
  return f;
}

Formula Formula::unary(Kind kind, Formula child) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(child));
  return f;
}

Formula Formula::binary(Kind kind, Formula a, Formula b) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula Formula::scale(const Rational& q, Formula child) {
  Formula f = unary(Kind::Scale, std::move(child));
  f.value = q;
  return f;
}

Formula Formula::quantifier(Kind kind, std::string v, Formula body) {
  Formula f = unary(kind, std::move(body));
  f.name = std::move(v);
  return f;
}

Term var(std::string name) { return Term{Term::Kind::Variable, std::move(name), {}}; }

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  End, Ident, Number, LParen, RParen, Comma, Dot, Bar, Minus, Star, Or, And, TSub, TAdd, Not,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view s) {
  struct Alias {
    std::string_view text;
    Tok kind;
  };
  static const Alias aliases[] = {
      {"-.", Tok::TSub},        {"+.", Tok::TAdd},        {"/\\", Tok::And},
      {"\\/", Tok::Or},         {"∸", Tok::TSub},    {"∔", Tok::TAdd},
      {"¬", Tok::Not},     {"∧", Tok::And},     {"∨", Tok::Or},
      {"−", Tok::Minus},   {"(", Tok::LParen},       {")", Tok::RParen},
      {",", Tok::Comma},        {".", Tok::Dot},          {"|", Tok::Bar},
      {"-", Tok::Minus},        {"*", Tok::Star},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (digit(c)) {
      std::size_t start = i;
      while (i < s.size() && digit(s[i])) ++i;
      if (i + 1 < s.size() && s[i] == '/' && digit(s[i + 1])) {
        ++i;
        while (i < s.size() && digit(s[i])) ++i;
      }
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "max") kind = Tok::Or;
      else if (word == "min") kind = Tok::And;
      else if (word == "not") kind = Tok::Not;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    bool matched = false;
    for (const auto& a : aliases) {
      if (s.substr(i, a.text.size()) == a.text) {
        out.push_back({a.kind, std::string(a.text), i});
        i += a.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
  Parser(std::string_view text, const Signature& sig) : tokens_(lex(text)), sig_(sig) {}

  Formula parse() {
    Formula f = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().offset, msg); }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }

  Formula expr() { return disjunction(); }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept(Tok::Or)) lhs = Formula::binary(Kind::Max, std::move(lhs), conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = additive();
    while (accept(Tok::And)) lhs = Formula::binary(Kind::Min, std::move(lhs), additive());
    return lhs;
  }

  Formula additive() {
    Formula lhs = scalar();
    for (;;) {
      if (accept(Tok::TSub))
        lhs = Formula::binary(Kind::TSub, std::move(lhs), scalar());
      else if (accept(Tok::TAdd))
        lhs = Formula::binary(Kind::TAdd, std::move(lhs), scalar());
      else
        return lhs;
    }
  }

  Formula scalar() {
    if (peek().kind == Tok::Number && tokens_[pos_ + 1].kind == Tok::Star) {
      Rational q = number();
      next();  // '*'
      return Formula::scale(q, scalar());
    }
    return unary();
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::unary(Kind::Not, unary());
    return primary();
  }

  Rational number() {
    const Token& t = next();
    try {
      return parse_rational(t.text);
    } catch (const Error& e) {
      throw ParseError(t.offset, e.what());
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        std::size_t at = t.offset;
        Rational q = number();
        if (!truth::in_unit_interval(q)) throw ParseError(at, "constant outside [0,1]");
        return Formula::constant(q);
      }
      case Tok::LParen: {
        next();
        Formula f = expr();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Bar: {
        next();
        Formula a = expr();
        expect(Tok::Minus, "'-' inside |...|");
        Formula b = expr();
        expect(Tok::Bar, "closing '|'");
        return Formula::binary(Kind::AbsDiff, std::move(a), std::move(b));
      }
      case Tok::Ident: {
        if (t.text == "sup" || t.text == "inf") {
          Kind kind = t.text == "sup" ? Kind::Sup : Kind::Inf;
          next();
          if (peek().kind != Tok::Ident) fail("expected bound variable");
          std::string v = next().text;
          expect(Tok::Dot, "'.' after bound variable");
          return Formula::quantifier(kind, std::move(v), expr());
        }
        if (t.text == "d" && tokens_[pos_ + 1].kind == Tok::LParen) {
          next();
          next();
          Term a = term();
          expect(Tok::Comma, "','");
          Term b = term();
          expect(Tok::RParen, "')'");
          return Formula::distance(std::move(a), std::move(b));
        }
        const PredicateSymbol* sym = sig_.find_predicate(t.text);
        if (!sym) fail("unknown predicate symbol '" + t.text + "'");
        std::size_t at = t.offset;
        std::string name = next().text;
        std::vector<Term> args;
        if (accept(Tok::LParen)) args = term_list();
        if (args.size() != sym->arity)
          throw ParseError(at, "predicate '" + name + "' expects " + std::to_string(sym->arity) +
                                   " arguments, got " + std::to_string(args.size()));
        return Formula::predicate(std::move(name), std::move(args));
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Term> term_list() {
    std::vector<Term> args;
    if (accept(Tok::RParen)) return args;
    args.push_back(term());
    while (accept(Tok::Comma)) args.push_back(term());
    expect(Tok::RParen, "')'");
    return args;
  }

  Term term() {
    if (peek().kind != Tok::Ident) fail("expected a term");
    std::size_t at = peek().offset;
    std::string name = next().text;
    if (accept(Tok::LParen)) {
      const FunctionSymbol* sym = sig_.find_function(name);
      if (!sym) throw ParseError(at, "unknown function symbol '" + name + "'");
      std::vector<Term> args = term_list();
      if (args.size() != sym->arity)
        throw ParseError(at, "function '" + name + "' expects " + std::to_string(sym->arity) +
                                 " arguments, got " + std::to_string(args.size()));
      return Term{Term::Kind::Function, std::move(name), std::move(args)};
    }
    if (sig_.has_constant(name)) return Term{Term::Kind::Constant, std::move(name), {}};
    if (name == "sup" || name == "inf") throw ParseError(at, "quantifier keyword used as a term");
    return var(std::move(name));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse(); }

// ---------------------------------------------------------------------------
// Formatting

namespace {

std::string format_term(const Term& t) {
  if (t.kind != Term::Kind::Function) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += format_term(t.args[i]);
  }
  return out + ")";
}

bool is_compound(const Formula& f) {
  switch (f.kind) {
    case Kind::Min: case Kind::Max: case Kind::TSub: case Kind::TAdd:
    case Kind::Sup: case Kind::Inf:
      return true;
    default:
      return false;
  }
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_string(q);
}

std::string operand(const Formula& f) {
  std::string s = format_formula(f);
  return is_compound(f) ? "(" + s + ")" : s;
}

}  // namespace

std::string format_formula(const Formula& f) {
  switch (f.kind) {
    case Kind::Constant: return format_rational(f.value);
    case Kind::Distance:
      return "d(" + format_term(f.terms[0]) + ", " + format_term(f.terms[1]) + ")";
    case Kind::Predicate: {
      if (f.terms.empty()) return f.name;
      std::string out = f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += format_term(f.terms[i]);
      }
      return out + ")";
    }
    case Kind::Not: return "not " + operand(f.children[0]);
    case Kind::Scale: return format_rational(f.value) + " * " + operand(f.children[0]);
    case Kind::Min: return operand(f.children[0]) + " /\\ " + operand(f.children[1]);
    case Kind::Max: return operand(f.children[0]) + " \\/ " + operand(f.children[1]);
    case Kind::TSub: return operand(f.children[0]) + " -. " + operand(f.children[1]);
    case Kind::TAdd: return operand(f.children[0]) + " +. " + operand(f.children[1]);
    case Kind::AbsDiff:
      return "|" + operand(f.children[0]) + " - " + operand(f.children[1]) + "|";
    case Kind::Sup: return "sup " + f.name + ". " + format_formula(f.children[0]);
    case Kind::Inf: return "inf " + f.name + ". " + format_formula(f.children[0]);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Free variables and evaluation

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable) out.insert(t.name);
  for (const auto& a : t.args) term_vars(a, out);
}

Element eval_term(const Term& t, const FiniteStructure& m, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      auto it = a.find(t.name);
      if (it == a.end()) throw Error("unbound variable '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::Constant: {
      auto it = m.constants.find(t.name);
      if (it == m.constants.end()) throw Error("constant '" + t.name + "' is not interpreted");
      return it->second;
    }
    case Term::Kind::Function: {
      Tuple args;
      for (const auto& arg : t.args) args.push_back(eval_term(arg, m, a));
      std::size_t flat = 0;
      for (Element e : args) flat = flat * m.size() + e;
      return m.function(t.name).at(flat);
    }
  }
  return 0;
}

Rational eval(const Formula& f, const FiniteStructure& m, Assignment& a) {
  switch (f.kind) {
    case Kind::Constant: return f.value;
    case Kind::Distance: return m.dist(eval_term(f.terms[0], m, a), eval_term(f.terms[1], m, a));
    case Kind::Predicate: {
      Tuple args;
      for (const auto& t : f.terms) args.push_back(eval_term(t, m, a));
      return m.predicate(f.name).at(args);
    }
    case Kind::Not: return truth::neg(eval(f.children[0], m, a));
    case Kind::Scale: return truth::scale(f.value, eval(f.children[0], m, a));
    case Kind::Min: {
      Rational lhs = eval(f.children[0], m, a);
      if (lhs == 0) return lhs;
      return truth::min(lhs, eval(f.children[1], m, a));
    }
    case Kind::Max: {
      Rational lhs = eval(f.children[0], m, a);
      if (lhs == 1) return lhs;
      return truth::max(lhs, eval(f.children[1], m, a));
    }
    case Kind::TSub: return truth::tsub(eval(f.children[0], m, a), eval(f.children[1], m, a));
    case Kind::TAdd: return truth::tadd(eval(f.children[0], m, a), eval(f.children[1], m, a));
    case Kind::AbsDiff: return truth::absdiff(eval(f.children[0], m, a), eval(f.children[1], m, a));
    case Kind::Sup:
    case Kind::Inf: {
      const bool sup = f.kind == Kind::Sup;
      auto saved = a.find(f.name) == a.end() ? std::optional<Element>{} : std::optional{a[f.name]};
      Rational best = sup ? 0 : 1;
      for (Element e = 0; e < m.size(); ++e) {
        a[f.name] = e;
        Rational v = eval(f.children[0], m, a);
        if (sup ? v > best : v < best) best = v;
        if (sup ? best == 1 : best == 0) break;
      }
      if (saved)
        a[f.name] = *saved;
      else
        a.erase(f.name);
      return best;
    }
  }
  return 0;
}

Rational term_modulus(const Term& t, const FiniteStructure& m, const Rational& d) {
  switch (t.kind) {
    case Term::Kind::Variable: return d;
    case Term::Kind::Constant: return 0;
    case Term::Kind::Function: {
      const FunctionSymbol* sym = m.signature.find_function(t.name);
      Rational total = 0;
      for (const auto& arg : t.args) total += sym->modulus(truth::min(term_modulus(arg, m, d), 1));
      return truth::min(total, 1);
    }
  }
  return 0;
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  for (const auto& t : f.terms) term_vars(t, out);
  for (const auto& c : f.children) {
    auto inner = free_variables(c);
    out.insert(inner.begin(), inner.end());
  }
  if (f.kind == Kind::Sup || f.kind == Kind::Inf) out.erase(f.name);
  return out;
}

Rational eval_formula(const Formula& f, const FiniteStructure& m, const Assignment& a) {
  for (const auto& v : free_variables(f))
    if (!a.count(v)) throw Error("unbound variable '" + v + "'");
  Assignment scratch = a;
  return eval(f, m, scratch);
}

Rational composed_modulus(const Formula& f, const FiniteStructure& m, const Rational& t) {
  auto sum2 = [&](const Formula& a, const Formula& b) {
    return truth::tadd(composed_modulus(a, m, t), composed_modulus(b, m, t));
  };
  switch (f.kind) {
    case Kind::Constant: return 0;
    case Kind::Distance:
      return truth::tadd(term_modulus(f.terms[0], m, t), term_modulus(f.terms[1], m, t));
    case Kind::Predicate: {
      const PredicateSymbol* sym = m.signature.find_predicate(f.name);
      if (!sym) throw Error("unknown predicate '" + f.name + "'");
      Rational total = 0;
      for (const auto& arg : f.terms) total += sym->modulus(truth::min(term_modulus(arg, m, t), 1));
      return truth::min(total, 1);
    }
    case Kind::Not:
    case Kind::Sup:
    case Kind::Inf: return composed_modulus(f.children[0], m, t);
    case Kind::Scale: return truth::scale(f.value, composed_modulus(f.children[0], m, t));
    case Kind::Min:
    case Kind::Max: return truth::max(composed_modulus(f.children[0], m, t), composed_modulus(f.children[1], m, t));
    case Kind::TSub:
    case Kind::TAdd:
    case Kind::AbsDiff: return sum2(f.children[0], f.children[1]);
  }
  return 1;
}

Table formula_table(const Formula& f, const FiniteStructure& m, const std::vector<std::string>& vars) {
  Table out(m.size(), vars.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Tuple t = out.tuple(i);
    Assignment a;
    for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k]] = t[k];
    out[i] = eval_formula(f, m, a);
  }
  return out;
}

}  // namespace contologic
