#include "zsym/parser.hpp"

#include "zsym/errors.hpp"

#include <cctype>
#include <optional>

namespace zsym {

namespace {

struct Parser {
  const std::string& text;
  const SymbolTable& symbols;
  std::size_t pos = 0;
  std::size_t line;
  std::size_t col_offset;

  Parser(const std::string& t, const SymbolTable& s, std::size_t ln, std::size_t co)
      : text(t), symbols(s), line(ln), col_offset(co) {}

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError(what, line, col_offset + at + 1);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Integer parse_integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number", start);
    return Integer(text.substr(start, pos - start));
  }

  std::string parse_identifier() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      fail("expected an identifier", pos);
    ++pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  Rational parse_exponent() {
    // ['-'] integer | '(' ['-'] integer ['/' integer] ')'
    skip_ws();
    if (eat('(')) {
      bool neg = eat('-');
      Integer n = parse_integer();
      Integer d(1);
      if (eat('/')) d = parse_integer();
      if (!eat(')')) fail("expected ')' closing the exponent", pos);
      if (d == 0) fail("zero denominator in exponent", pos);
      Rational q(n, d);
      return neg ? -q : q;
    }
    bool neg = eat('-');
    Integer n = parse_integer();
    Rational q(n);
    return neg ? -q : q;
  }

  static std::optional<CallFn> function_named(const std::string& name) {
    if (name == "exp") return CallFn::exp;
    if (name == "sqrt") return CallFn::sqrt;
    if (name == "sin") return CallFn::sin;
    if (name == "cos") return CallFn::cos;
    return std::nullopt;
  }

  Expr parse_base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression", pos);
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr::rational(Rational(parse_integer()));
    }
    if (c == '(') {
      ++pos;
      Expr e = parse_sum();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    std::size_t at = pos;
    std::string name = parse_identifier();
    if (auto fn = function_named(name)) {
      skip_ws();
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        Expr arg = parse_sum();
        if (!eat(')')) fail("expected ')' closing " + name + "(...)", pos);
        return Expr::call(*fn, std::move(arg));
      }
      // fall through: a function name used as a plain identifier
    }
    auto id = symbols.find(name);
    if (!id) {
      (void)at;
      throw UnknownSymbolError(name);
    }
    return make_symbol(symbols, *id);
  }

  Expr parse_factor() {
    Expr base = parse_base();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      Rational e = parse_exponent();
      return Expr::power(std::move(base), std::move(e));
    }
    return base;
  }

  Expr parse_term() {
    std::vector<Expr> factors;
    factors.push_back(parse_factor());
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        factors.push_back(parse_factor());
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        factors.push_back(Expr::power(parse_factor(), Rational(-1)));
      } else {
        break;
      }
    }
    if (factors.size() == 1) return factors[0];
    return Expr::product(std::move(factors));
  }

  Expr parse_sum() {
    std::vector<Expr> terms;
    bool lead_neg = false;
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      lead_neg = text[pos] == '-';
      ++pos;
    }
    Expr first = parse_term();
    terms.push_back(lead_neg ? Expr::product({Expr::integer(-1), std::move(first)})
                             : std::move(first));
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (c != '+' && c != '-') break;
      ++pos;
      Expr t = parse_term();
      terms.push_back(c == '-' ? Expr::product({Expr::integer(-1), std::move(t)})
                               : std::move(t));
    }
    if (terms.size() == 1) return terms[0];
    return Expr::sum(std::move(terms));
  }

  Expr run() {
    Expr e = parse_sum();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input", pos);
    return e;
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const SymbolTable& symbols, std::size_t line,
                std::size_t column_offset) {
  Parser p(text, symbols, line, column_offset);
  return normalize(p.run());
}

}  // namespace zsym
