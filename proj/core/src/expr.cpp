#include "zsym/expr.hpp"

#include "expr_node.hpp"
#include "zsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zsym {

using detail::ExprAccess;
using detail::Frac;
using detail::FracPtr;
using detail::Node;

// ---------------------------------------------------------------------------
// construction & accessors
// ---------------------------------------------------------------------------

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr() : Expr(Expr::rational(Rational(0))) {}

Expr Expr::rational(Rational value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::rational;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::integer(long value) { return rational(Rational(value)); }

Expr Expr::sum(std::vector<Expr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::sum;
  n->children = std::move(terms);
  if (n->children.empty()) return rational(Rational(0));
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::product;
  n->children = std::move(factors);
  if (n->children.empty()) return rational(Rational(1));
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, Rational exponent) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::power;
  n->children.push_back(std::move(base));
  n->value = std::move(exponent);
  return Expr(std::move(n));
}

Expr Expr::call(CallFn fn, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::call;
  n->fn = fn;
  n->children.push_back(std::move(argument));
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
const Rational& Expr::rational_value() const { return node_->value; }
SymbolId Expr::symbol() const { return node_->sym; }
const std::string& Expr::symbol_name() const { return *node_->sym_name; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
const Rational& Expr::exponent() const { return node_->value; }
CallFn Expr::call_fn() const { return node_->fn; }
bool Expr::is_normalized() const { return node_->canon != nullptr; }

Expr make_symbol(const SymbolTable& table, SymbolId id) {
  if (!table.contains(id)) throw Error("make_symbol: unregistered symbol id");
  return ExprAccess::symbol_node(id, table.name(id), table.assumption(id).sign);
}

// ---------------------------------------------------------------------------
// normalization bridge
// ---------------------------------------------------------------------------

namespace {

FracPtr share(Frac f) { return std::make_shared<Frac>(std::move(f)); }

FracPtr to_frac(const Expr& e) {
  const auto& n = ExprAccess::node(e);
  if (n->canon) return n->canon;
  switch (n->kind) {
    case ExprKind::rational:
      return share(detail::frac_rational(n->value));
    case ExprKind::symbol:
      return share(detail::frac_symbol(n->sym, *n->sym_name, n->sym_sign));
    case ExprKind::sum: {
      Frac acc;
      for (const auto& c : n->children) acc = detail::frac_add(acc, *to_frac(c));
      return share(std::move(acc));
    }
    case ExprKind::product: {
      Frac acc = detail::frac_rational(Rational(1));
      for (const auto& c : n->children) acc = detail::frac_mul(acc, *to_frac(c));
      return share(std::move(acc));
    }
    case ExprKind::power:
      return share(detail::frac_pow(*to_frac(n->children[0]), n->value));
    case ExprKind::call: {
      FracPtr arg = to_frac(n->children[0]);
      switch (n->fn) {
        case CallFn::exp:
          return share(detail::frac_exp(*arg));
        case CallFn::sqrt:
          return share(detail::frac_pow(*arg, Rational(1, 2)));
        case CallFn::sin:
          return share(detail::frac_sin(*arg));
        case CallFn::cos:
          return share(detail::frac_cos(*arg));
      }
      break;
    }
  }
  throw Error("to_frac: corrupt expression node");
}

}  // namespace

Expr ExprAccess::make(std::shared_ptr<const Node> n) { return Expr(std::move(n)); }
const std::shared_ptr<const Node>& ExprAccess::node(const Expr& e) { return e.node_; }
FracPtr ExprAccess::frac(const Expr& e) { return to_frac(e); }

Expr ExprAccess::symbol_node(SymbolId id, const std::string& name, Assumption::Sign sign) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::symbol;
  n->sym = id;
  n->sym_name = std::make_shared<std::string>(name);
  n->sym_sign = sign;
  return Expr(std::move(n));
}

// ---------------------------------------------------------------------------
// canonical tree rebuild
// ---------------------------------------------------------------------------

namespace {

Expr rebuild_frac(const Frac& f);

Expr rebuild_poly(const detail::Poly& p) { return rebuild_frac(Frac{p, {}}); }

Expr atom_base_expr(const detail::Atom& atom) {
  using detail::KernelFn;
  if (atom.is_symbol())
    return ExprAccess::symbol_node(atom.symbol, *atom.name, atom.sign);
  switch (atom.kernel->fn) {
    case KernelFn::exp_fn:
      return Expr::call(CallFn::exp, rebuild_frac(*atom.kernel->arg));
    case KernelFn::sin_fn:
      return Expr::call(CallFn::sin, rebuild_frac(*atom.kernel->arg));
    case KernelFn::cos_fn:
      return Expr::call(CallFn::cos, rebuild_frac(*atom.kernel->arg));
    case KernelFn::root_fn:
      return rebuild_frac(*atom.kernel->arg);
  }
  throw Error("atom_base_expr: corrupt atom");
}

Expr atom_pow_expr(const detail::AtomPow& f) {
  const bool is_root = !f.atom.is_symbol() && f.atom.kernel->fn == detail::KernelFn::root_fn;
  Expr base = atom_base_expr(f.atom);
  if (is_root) {
    if (f.exp == Rational(1, 2)) return Expr::call(CallFn::sqrt, std::move(base));
    return Expr::power(std::move(base), f.exp);
  }
  if (f.exp == 1) return base;
  return Expr::power(std::move(base), f.exp);
}

Expr term_expr(const detail::Term& t) {
  std::vector<Expr> parts;
  if (t.coeff != 1 || t.mon.empty()) parts.push_back(Expr::rational(t.coeff));
  for (const auto& f : t.mon.factors) parts.push_back(atom_pow_expr(f));
  if (parts.size() == 1) return parts[0];
  return Expr::product(std::move(parts));
}

Expr rebuild_frac(const Frac& f) {
  if (f.num.is_zero()) return Expr::rational(Rational(0));
  std::vector<Expr> terms;
  terms.reserve(f.num.terms.size());
  for (const auto& t : f.num.terms) terms.push_back(term_expr(t));
  Expr num = terms.size() == 1 ? terms[0] : Expr::sum(std::move(terms));
  if (f.den.empty()) return num;
  std::vector<Expr> parts;
  if (num.kind() == ExprKind::product)
    parts = num.children();
  else
    parts.push_back(std::move(num));
  for (const auto& d : f.den)
    parts.push_back(Expr::power(rebuild_poly(d.base), Rational(-d.exp)));
  return Expr::product(std::move(parts));
}

Expr attach(FracPtr f) {
  Expr tree = rebuild_frac(*f);
  auto n = std::make_shared<Node>(*ExprAccess::node(tree));
  n->canon = std::move(f);
  return ExprAccess::make(std::move(n));
}

}  // namespace

Expr ExprAccess::rebuild(FracPtr f) { return attach(std::move(f)); }

Expr normalize(const Expr& e) {
  if (e.is_normalized()) return e;
  return attach(to_frac(e));
}

Expr differentiate(const Expr& e, SymbolId v) {
  return attach(share(detail::frac_diff(*to_frac(e), v)));
}

// ---------------------------------------------------------------------------
// arithmetic (canonical results)
// ---------------------------------------------------------------------------

Expr operator+(const Expr& a, const Expr& b) {
  return attach(share(detail::frac_add(*to_frac(a), *to_frac(b))));
}

Expr operator-(const Expr& a, const Expr& b) {
  return attach(share(detail::frac_sub(*to_frac(a), *to_frac(b))));
}

Expr operator*(const Expr& a, const Expr& b) {
  return attach(share(detail::frac_mul(*to_frac(a), *to_frac(b))));
}

Expr operator/(const Expr& a, const Expr& b) {
  return attach(share(detail::frac_div(*to_frac(a), *to_frac(b))));
}

Expr Expr::operator-() const {
  return attach(share(detail::frac_neg(*to_frac(*this))));
}

Expr pow(const Expr& base, const Rational& exponent) {
  return attach(share(detail::frac_pow(*to_frac(base), exponent)));
}

Expr exp(const Expr& e) { return attach(share(detail::frac_exp(*to_frac(e)))); }
Expr sqrt(const Expr& e) { return pow(e, Rational(1, 2)); }
Expr sin(const Expr& e) { return attach(share(detail::frac_sin(*to_frac(e)))); }
Expr cos(const Expr& e) { return attach(share(detail::frac_cos(*to_frac(e)))); }

// ---------------------------------------------------------------------------
// structural equality
// ---------------------------------------------------------------------------

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::rational:
      return x.value == y.value;
    case ExprKind::symbol:
      return x.sym == y.sym && *x.sym_name == *y.sym_name;
    case ExprKind::power:
      if (x.value != y.value) return false;
      break;
    case ExprKind::call:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  if (x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

namespace {

double eval_tree(const Expr& e, const std::map<SymbolId, double>& point) {
  switch (e.kind()) {
    case ExprKind::rational:
      return to_double(e.rational_value());
    case ExprKind::symbol: {
      auto it = point.find(e.symbol());
      if (it == point.end())
        throw Error("evaluate: no value assigned to symbol '" + e.symbol_name() + "'");
      return it->second;
    }
    case ExprKind::sum: {
      double s = 0;
      for (const auto& c : e.children()) s += eval_tree(c, point);
      return s;
    }
    case ExprKind::product: {
      double s = 1;
      for (const auto& c : e.children()) s *= eval_tree(c, point);
      return s;
    }
    case ExprKind::power: {
      double base = eval_tree(e.children()[0], point);
      return detail::pow_real(base, e.exponent());
    }
    case ExprKind::call: {
      double a = eval_tree(e.children()[0], point);
      switch (e.call_fn()) {
        case CallFn::exp: {
          double v = std::exp(a);
          if (!std::isfinite(v)) throw SingularEvaluation("exp overflow in evaluation");
          return v;
        }
        case CallFn::sqrt:
          if (a < 0) throw SingularEvaluation("sqrt of a negative value");
          return std::sqrt(a);
        case CallFn::sin:
          return std::sin(a);
        case CallFn::cos:
          return std::cos(a);
      }
      break;
    }
  }
  throw Error("evaluate: corrupt expression node");
}

}  // namespace

double evaluate(const Expr& e, const std::map<SymbolId, double>& point) {
  double v = eval_tree(e, point);
  if (!std::isfinite(v)) throw SingularEvaluation("non-finite evaluation result");
  return v;
}

std::set<SymbolId> free_symbols(const Expr& e) {
  std::set<SymbolId> out;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* cur = stack.back();
    stack.pop_back();
    if (cur->kind() == ExprKind::symbol) out.insert(cur->symbol());
    for (const auto& c : cur->children()) stack.push_back(&c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

struct TermPieces {
  bool negative = false;
  std::string body;
};

std::string print_expr(const Expr& e);

std::string print_base(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::symbol:
      return e.symbol_name();
    case ExprKind::call:
      return print_expr(e);
    default:
      return "(" + print_expr(e) + ")";
  }
}

std::string print_power(const Expr& base, const Rational& exp) {
  std::string b = print_base(base);
  if (exp == 1) return b;
  if (is_integer(exp) && exp > 0) return b + "^" + to_string(exp);
  return b + "^(" + to_string(exp) + ")";
}

TermPieces print_term(const Expr& e) {
  TermPieces out;
  Rational coeff(1);
  std::vector<std::string> num_parts;
  std::vector<std::string> den_parts;

  auto handle_factor = [&](const Expr& f) {
    if (f.kind() == ExprKind::rational) {
      coeff *= f.rational_value();
    } else if (f.kind() == ExprKind::power && f.exponent() < 0) {
      den_parts.push_back(print_power(f.children()[0], -f.exponent()));
    } else if (f.kind() == ExprKind::power) {
      num_parts.push_back(print_power(f.children()[0], f.exponent()));
    } else if (f.kind() == ExprKind::sum) {
      num_parts.push_back("(" + print_expr(f) + ")");
    } else {
      num_parts.push_back(print_expr(f));
    }
  };

  if (e.kind() == ExprKind::product) {
    for (const auto& f : e.children()) handle_factor(f);
  } else {
    handle_factor(e);
  }

  out.negative = coeff < 0;
  Rational c = out.negative ? -coeff : coeff;
  std::string s;
  const Integer cn = numer(c);
  const Integer cd = denom(c);
  if (num_parts.empty() || cn != 1) {
    s += cn.str();
    if (!num_parts.empty()) s += "*";
  }
  for (std::size_t i = 0; i < num_parts.size(); ++i) {
    if (i) s += "*";
    s += num_parts[i];
  }
  std::vector<std::string> dens;
  if (cd != 1) dens.push_back(cd.str());
  for (auto& d : den_parts) dens.push_back(std::move(d));
  if (dens.size() == 1) {
    s += "/" + dens[0];
  } else if (dens.size() > 1) {
    s += "/(";
    for (std::size_t i = 0; i < dens.size(); ++i) {
      if (i) s += "*";
      s += dens[i];
    }
    s += ")";
  }
  out.body = s;
  return out;
}

std::string print_expr(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::rational: {
      return to_string(e.rational_value());
    }
    case ExprKind::symbol:
      return e.symbol_name();
    case ExprKind::sum: {
      std::string s;
      bool first = true;
      for (const auto& t : e.children()) {
        TermPieces p = print_term(t);
        if (first) {
          s += (p.negative ? "-" : "") + p.body;
          first = false;
        } else {
          s += (p.negative ? " - " : " + ") + p.body;
        }
      }
      return s;
    }
    case ExprKind::product:
    case ExprKind::power: {
      TermPieces p = print_term(e);
      return (p.negative ? "-" : "") + p.body;
    }
    case ExprKind::call: {
      const char* name = nullptr;
      switch (e.call_fn()) {
        case CallFn::exp:
          name = "exp";
          break;
        case CallFn::sqrt:
          name = "sqrt";
          break;
        case CallFn::sin:
          name = "sin";
          break;
        case CallFn::cos:
          name = "cos";
          break;
      }
      return std::string(name) + "(" + print_expr(e.children()[0]) + ")";
    }
  }
  throw Error("to_string: corrupt expression node");
}

}  // namespace

std::string to_string(const Expr& e) { return print_expr(e); }

}  // namespace zsym
