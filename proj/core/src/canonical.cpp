#include "canonical.hpp"

#include "zsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zsym::detail {

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int cmp_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

Rational Poly::constant_value() const { return terms.empty() ? Rational(0) : terms[0].coeff; }

// ---------------------------------------------------------------------------
// orders
// ---------------------------------------------------------------------------

int compare(const Atom& a, const Atom& b) {
  if (a.is_symbol() != b.is_symbol()) return a.is_symbol() ? -1 : 1;
  if (a.is_symbol()) {
    if (a.symbol != b.symbol) return a.symbol < b.symbol ? -1 : 1;
    int c = a.name->compare(*b.name);
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  if (a.kernel == b.kernel) return 0;
  if (a.kernel->fn != b.kernel->fn)
    return static_cast<int>(a.kernel->fn) < static_cast<int>(b.kernel->fn) ? -1 : 1;
  return compare(*a.kernel->arg, *b.kernel->arg);
}

int compare(const Monomial& a, const Monomial& b) {
  Rational da(0), db(0);
  for (const auto& f : a.factors) da += f.exp;
  for (const auto& f : b.factors) db += f.exp;
  if (int c = cmp_rational(da, db)) return c;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    if (int c = compare(a.factors[i].atom, b.factors[j].atom)) {
      // lex: owning the earlier atom with a positive exponent ranks higher
      return c < 0 ? (a.factors[i].exp > 0 ? 1 : -1) : (b.factors[j].exp > 0 ? -1 : 1);
    }
    if (int c = cmp_rational(a.factors[i].exp, b.factors[j].exp)) return c;
    ++i, ++j;
  }
  if (i < a.factors.size()) return a.factors[i].exp > 0 ? 1 : -1;
  if (j < b.factors.size()) return b.factors[j].exp > 0 ? -1 : 1;
  return 0;
}

int compare(const Term& a, const Term& b) {
  if (int c = compare(a.mon, b.mon)) return c;
  return cmp_rational(a.coeff, b.coeff);
}

int compare(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (int c = compare(a.terms[i], b.terms[i])) return c;
  return 0;
}

int compare(const Frac& a, const Frac& b) {
  if (a.den.size() != b.den.size()) return a.den.size() < b.den.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.den.size(); ++i) {
    if (int c = cmp_int(a.den[i].exp, b.den[i].exp)) return c;
    if (int c = compare(a.den[i].base, b.den[i].base)) return c;
  }
  return compare(a.num, b.num);
}

// ---------------------------------------------------------------------------
// basic constructors
// ---------------------------------------------------------------------------

Atom Atom::make_symbol(SymbolId id, std::shared_ptr<const std::string> name,
                       Assumption::Sign sign) {
  Atom a;
  a.symbol = id;
  a.name = std::move(name);
  a.sign = sign;
  return a;
}

Atom Atom::make_kernel(KernelFn fn, FracPtr arg) {
  Atom a;
  a.kernel = std::make_shared<Kernel>(Kernel{fn, std::move(arg)});
  return a;
}

Frac frac_rational(const Rational& c) {
  Frac f;
  if (c != 0) f.num.terms.push_back(Term{c, {}});
  return f;
}

Frac frac_symbol(SymbolId id, const std::string& name, Assumption::Sign sign) {
  Frac f;
  Monomial m;
  m.factors.push_back(AtomPow{Atom::make_symbol(id, std::make_shared<std::string>(name), sign), 1});
  f.num.terms.push_back(Term{Rational(1), std::move(m)});
  return f;
}

static void sort_terms(Poly& p) {
  std::sort(p.terms.begin(), p.terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mon, b.mon) > 0; });
}

/// Combines equal monomials of a descending-sorted term list.
static Poly combine_sorted(std::vector<Term> terms) {
  Poly out;
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!out.terms.empty() && compare(out.terms.back().mon, t.mon) == 0) {
      out.terms.back().coeff += t.coeff;
      if (out.terms.back().coeff == 0) out.terms.pop_back();
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

Frac frac_from_poly(Poly p) {
  sort_terms(p);
  Frac f;
  f.num = combine_sorted(std::move(p.terms));
  return f;
}

// ---------------------------------------------------------------------------
// polynomial arithmetic
// ---------------------------------------------------------------------------

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    int c = compare(a.terms[i].mon, b.terms[j].mon);
    if (c > 0) {
      out.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      out.terms.push_back(b.terms[j++]);
    } else {
      Rational s = a.terms[i].coeff + b.terms[j].coeff;
      if (s != 0) out.terms.push_back(Term{std::move(s), a.terms[i].mon});
      ++i, ++j;
    }
  }
  for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
  return out;
}

Poly poly_neg(const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms) t.coeff = -t.coeff;
  return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
  if (c == 0) return {};
  Poly out = a;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

namespace {

Frac frac_one() { return frac_rational(Rational(1)); }

/// Removes rational content and makes the leading coefficient positive.
/// Returns c with input = c * primitive.
Rational make_primitive(Poly& p) {
  if (p.is_zero()) return Rational(0);
  Rational g(0);
  for (const auto& t : p.terms) g = content_gcd(g, t.coeff);
  if (p.terms[0].coeff < 0) g = -g;
  for (auto& t : p.terms) t.coeff /= g;
  return g;
}

Monomial mon_mul_free(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    int c = compare(a.factors[i].atom, b.factors[j].atom);
    if (c < 0) {
      out.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      out.factors.push_back(b.factors[j++]);
    } else {
      Rational e = a.factors[i].exp + b.factors[j].exp;
      if (e != 0) out.factors.push_back(AtomPow{a.factors[i].atom, e});
      ++i, ++j;
    }
  }
  for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
  for (; j < b.factors.size(); ++j) out.factors.push_back(b.factors[j]);
  return out;
}

Monomial mon_inverse(const Monomial& m) {
  Monomial out = m;
  for (auto& f : out.factors) f.exp = -f.exp;
  return out;
}

/// Per-atom minimum exponent over all terms (absent atoms count as 0).
Monomial monomial_content(const Poly& p) {
  if (p.is_zero()) return {};
  std::vector<AtomPow> mins = p.terms[0].mon.factors;
  for (std::size_t t = 1; t < p.terms.size() && !mins.empty(); ++t) {
    const auto& f = p.terms[t].mon.factors;
    std::vector<AtomPow> next;
    std::size_t i = 0, j = 0;
    while (i < mins.size() && j < f.size()) {
      int c = compare(mins[i].atom, f[j].atom);
      if (c < 0) {
        if (mins[i].exp < 0) next.push_back(mins[i]);
        ++i;
      } else if (c > 0) {
        if (f[j].exp < 0) next.push_back(f[j]);
        ++j;
      } else {
        Rational e = std::min(mins[i].exp, f[j].exp, [](const Rational& x, const Rational& y) { return x < y; });
        if (e != 0) next.push_back(AtomPow{mins[i].atom, e});
        ++i, ++j;
      }
    }
    for (; i < mins.size(); ++i)
      if (mins[i].exp < 0) next.push_back(mins[i]);
    for (; j < f.size(); ++j)
      if (f[j].exp < 0) next.push_back(f[j]);
    mins = std::move(next);
  }
  return Monomial{std::move(mins)};
}

struct MonomialBuild {
  Monomial mon;
  Frac multiplier;
  bool has_multiplier = false;
};

/// From merged atom powers, restore monomial invariants. Integer powers of
/// root atoms expand into the multiplier (or its denominator when negative).
MonomialBuild finalize_monomial(std::vector<AtomPow> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const AtomPow& a, const AtomPow& b) { return compare(a.atom, b.atom) < 0; });
  MonomialBuild out;
  std::vector<AtomPow> merged;
  for (auto& f : factors) {
    if (!merged.empty() && compare(merged.back().atom, f.atom) == 0)
      merged.back().exp += f.exp;
    else
      merged.push_back(std::move(f));
  }
  for (auto& f : merged) {
    if (f.exp == 0) continue;
    const bool is_root = !f.atom.is_symbol() && f.atom.kernel->fn == KernelFn::root_fn;
    if (!is_root) {
      out.mon.factors.push_back(std::move(f));
      continue;
    }
    Integer k = numer(f.exp) / denom(f.exp);
    if (f.exp < 0 && !is_integer(f.exp)) k -= 1;
    Rational frac_part = f.exp - Rational(k);
    const Frac& base = *f.atom.kernel->arg;
    if (k != 0) {
      long ki = static_cast<long>(k);
      Frac piece;
      if (base.is_rational()) {
        piece = frac_rational(pow_integer(base.num.constant_value(), ki));
      } else if (ki > 0) {
        piece = poly_pow(base.num, static_cast<int>(ki));
      } else {
        piece.num.terms.push_back(Term{Rational(1), {}});
        piece.den.push_back(FactorPow{base.num, static_cast<int>(-ki)});
      }
      out.multiplier = out.has_multiplier ? frac_mul(out.multiplier, piece) : piece;
      out.has_multiplier = true;
    }
    if (frac_part != 0) out.mon.factors.push_back(AtomPow{f.atom, frac_part});
  }
  return out;
}

struct TermProduct {
  bool simple;
  Term term;
  Frac frac;
};

TermProduct term_mul(const Term& a, const Term& b) {
  std::vector<AtomPow> factors;
  factors.reserve(a.mon.factors.size() + b.mon.factors.size());
  for (const auto& f : a.mon.factors) factors.push_back(f);
  for (const auto& f : b.mon.factors) factors.push_back(f);
  MonomialBuild mb = finalize_monomial(std::move(factors));
  Rational c = a.coeff * b.coeff;
  if (!mb.has_multiplier) {
    return TermProduct{true, Term{std::move(c), std::move(mb.mon)}, {}};
  }
  Poly tp;
  tp.terms.push_back(Term{std::move(c), std::move(mb.mon)});
  Frac result = frac_mul(Frac{std::move(tp), {}}, mb.multiplier);
  return TermProduct{false, {}, std::move(result)};
}

std::vector<FactorPow> merge_den(const std::vector<FactorPow>& a, const std::vector<FactorPow>& b,
                                 bool lcm_only) {
  std::vector<FactorPow> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].base, b[j].base);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = lcm_only ? std::max(a[i].exp, b[j].exp) : a[i].exp + b[j].exp;
      out.push_back(FactorPow{a[i].base, e});
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

/// Expands the factors of `all` in excess of `part`. Inputs hold the monomial
/// invariants, so products only ever collapse roots upward (no denominators).
Poly expand_den_difference(const std::vector<FactorPow>& all, const std::vector<FactorPow>& part) {
  Poly acc;
  acc.terms.push_back(Term{Rational(1), {}});
  for (const auto& f : all) {
    int have = 0;
    for (const auto& g : part)
      if (compare(f.base, g.base) == 0) {
        have = g.exp;
        break;
      }
    int need = f.exp - have;
    if (need <= 0) continue;
    Frac powed = poly_pow(f.base, need);
    Frac prod = poly_mul(acc, powed.num);
    acc = std::move(prod.num);
  }
  return acc;
}

Frac reduce(Poly num, std::vector<FactorPow> den) {
  if (num.is_zero()) return {};
  for (auto& f : den) {
    while (f.exp > 0) {
      auto q = poly_div_exact(num, f.base);
      if (!q) break;
      num = std::move(*q);
      --f.exp;
    }
  }
  std::erase_if(den, [](const FactorPow& f) { return f.exp == 0; });
  return Frac{std::move(num), std::move(den)};
}

/// Multiplies a fraction by a single term (coefficient * monomial), merging
/// exponents through the invariant-restoring builder.
Frac frac_mul_term(const Frac& a, const Rational& coeff, const Monomial& mon) {
  if (a.is_zero() || coeff == 0) return {};
  std::vector<Term> plain;
  plain.reserve(a.num.terms.size());
  Frac heavy;
  bool has_heavy = false;
  for (const auto& t : a.num.terms) {
    TermProduct p = term_mul(t, Term{coeff, mon});
    if (p.simple) {
      plain.push_back(std::move(p.term));
    } else {
      heavy = has_heavy ? frac_add(heavy, p.frac) : std::move(p.frac);
      has_heavy = true;
    }
  }
  Frac out = frac_from_poly(Poly{std::move(plain)});
  out.den = merge_den(out.den, a.den, false);
  if (has_heavy) {
    heavy.den = merge_den(heavy.den, a.den, false);
    out = frac_add(out, heavy);
  }
  return reduce(std::move(out.num), std::move(out.den));
}

}  // namespace

Frac poly_mul(const Poly& a, const Poly& b) {
  std::vector<Term> plain;
  plain.reserve(a.terms.size() * b.terms.size());
  Frac heavy;
  bool has_heavy = false;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      TermProduct p = term_mul(ta, tb);
      if (p.simple) {
        if (p.term.coeff != 0) plain.push_back(std::move(p.term));
      } else {
        heavy = has_heavy ? frac_add(heavy, p.frac) : std::move(p.frac);
        has_heavy = true;
      }
    }
  Frac out = frac_from_poly(Poly{std::move(plain)});
  if (has_heavy) out = frac_add(out, heavy);
  return out;
}

Frac poly_pow(const Poly& a, int e) {
  Frac acc = frac_one();
  Frac base{a, {}};
  int k = e;
  while (k > 0) {
    if (k & 1) acc = frac_mul(acc, base);
    base = frac_mul(base, base);
    k >>= 1;
  }
  return acc;
}

Frac frac_neg(const Frac& a) { return Frac{poly_neg(a.num), a.den}; }

Frac frac_add(const Frac& a, const Frac& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<FactorPow> lcm = merge_den(a.den, b.den, /*lcm_only=*/true);
  Poly scale_a = expand_den_difference(lcm, a.den);
  Poly scale_b = expand_den_difference(lcm, b.den);
  Frac na = poly_mul(a.num, scale_a);
  Frac nb = poly_mul(b.num, scale_b);
  // na/nb denominators cannot appear for invariant inputs
  Poly sum = poly_add(na.num, nb.num);
  return reduce(std::move(sum), std::move(lcm));
}

Frac frac_sub(const Frac& a, const Frac& b) { return frac_add(a, frac_neg(b)); }

Frac frac_mul(const Frac& a, const Frac& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Frac prod = poly_mul(a.num, b.num);
  std::vector<FactorPow> den = merge_den(a.den, b.den, /*lcm_only=*/false);
  den = merge_den(den, prod.den, /*lcm_only=*/false);
  return reduce(std::move(prod.num), std::move(den));
}

Frac frac_div(const Frac& a, const Frac& b) {
  if (b.is_zero()) throw SingularEvaluation("division by an identically zero expression");
  if (a.is_zero()) return {};
  // 1/b = (b's denominator, expanded) / b.num with b.num written as
  // content * monomial * primitive-part.
  Poly bnum = b.num;
  Rational content = make_primitive(bnum);
  Monomial mcontent = monomial_content(bnum);
  if (!mcontent.factors.empty()) {
    Monomial inv = mon_inverse(mcontent);
    std::vector<Term> shifted;
    shifted.reserve(bnum.terms.size());
    for (auto& t : bnum.terms) shifted.push_back(Term{t.coeff, mon_mul_free(t.mon, inv)});
    bnum = Poly{std::move(shifted)};
  }

  Frac out = a;
  if (!b.den.empty()) {
    Poly bden = expand_den_difference(b.den, {});
    Frac prod = poly_mul(out.num, bden);
    out = Frac{std::move(prod.num), merge_den(out.den, prod.den, false)};
  }
  out = frac_mul_term(out, Rational(1) / content, mon_inverse(mcontent));
  if (!bnum.is_constant()) {
    out.den = merge_den(out.den, {FactorPow{std::move(bnum), 1}}, false);
    return reduce(std::move(out.num), std::move(out.den));
  }
  return out;
}

// ---------------------------------------------------------------------------
// kernels and fractional powers
// ---------------------------------------------------------------------------

namespace {

Frac frac_from_atom(Atom atom, const Rational& e) {
  MonomialBuild mb = finalize_monomial({AtomPow{std::move(atom), e}});
  Poly p;
  p.terms.push_back(Term{Rational(1), std::move(mb.mon)});
  Frac f{std::move(p), {}};
  return mb.has_multiplier ? frac_mul(f, mb.multiplier) : f;
}

bool known_positive_atom(const Atom& a) {
  if (a.is_symbol()) return a.sign == Assumption::Sign::positive;
  switch (a.kernel->fn) {
    case KernelFn::exp_fn:
      return true;
    case KernelFn::root_fn:
      return true;  // principal root of a nonnegative base
    default:
      return false;
  }
}

/// base^e for non-integer e.
Frac root_of(const Frac& base, const Rational& e) {
  if (base.is_zero()) {
    if (e > 0) return {};
    throw SingularEvaluation("zero raised to a nonpositive fractional power");
  }
  Frac acc = frac_one();
  for (const auto& f : base.den) {
    Atom a = Atom::make_kernel(KernelFn::root_fn, std::make_shared<Frac>(Frac{f.base, {}}));
    acc = frac_mul(acc, frac_from_atom(std::move(a), -Rational(f.exp) * e));
  }
  Poly num = base.num;
  Rational content = make_primitive(num);
  if (auto exact = exact_rational_pow(content, e)) {
    acc = frac_mul(acc, frac_rational(*exact));
  } else {
    Atom a =
        Atom::make_kernel(KernelFn::root_fn, std::make_shared<Frac>(frac_rational(content)));
    acc = frac_mul(acc, frac_from_atom(std::move(a), e));
  }
  if (num.is_constant()) return acc;
  if (num.terms.size() == 1) {
    // distribute over a single monomial where the sign is known
    std::vector<AtomPow> rest;
    for (const auto& f : num.terms[0].mon.factors) {
      const bool root_kernel = !f.atom.is_symbol() && f.atom.kernel->fn == KernelFn::root_fn;
      if (known_positive_atom(f.atom) || root_kernel) {
        acc = frac_mul(acc, frac_from_atom(f.atom, f.exp * e));
      } else {
        rest.push_back(f);
      }
    }
    if (!rest.empty()) {
      Poly inner;
      inner.terms.push_back(Term{Rational(1), Monomial{std::move(rest)}});
      Atom a = Atom::make_kernel(KernelFn::root_fn,
                                 std::make_shared<Frac>(Frac{std::move(inner), {}}));
      acc = frac_mul(acc, frac_from_atom(std::move(a), e));
    }
    return acc;
  }
  Monomial mc = monomial_content(num);
  if (!mc.factors.empty()) {
    Monomial inv = mon_inverse(mc);
    std::vector<Term> shifted;
    for (auto& t : num.terms) shifted.push_back(Term{t.coeff, mon_mul_free(t.mon, inv)});
    num = Poly{std::move(shifted)};
    Poly mono;
    mono.terms.push_back(Term{Rational(1), mc});
    acc = frac_mul(acc, root_of(Frac{std::move(mono), {}}, e));
  }
  Atom a = Atom::make_kernel(KernelFn::root_fn, std::make_shared<Frac>(Frac{std::move(num), {}}));
  return frac_mul(acc, frac_from_atom(std::move(a), e));
}

}  // namespace

Frac frac_pow(const Frac& a, const Rational& e) {
  if (e == 0) {
    if (a.is_zero()) throw SingularEvaluation("0^0 is undefined");
    return frac_one();
  }
  if (e == 1) return a;
  if (is_integer(e)) {
    long k = static_cast<long>(numer(e));
    if (a.is_rational()) return frac_rational(pow_integer(a.num.constant_value(), k));
    if (k < 0) return frac_div(frac_one(), frac_pow(a, Rational(-k)));
    Frac num_pow = poly_pow(a.num, static_cast<int>(k));
    std::vector<FactorPow> den;
    den.reserve(a.den.size());
    for (const auto& f : a.den) den.push_back(FactorPow{f.base, static_cast<int>(f.exp * k)});
    den = merge_den(den, num_pow.den, false);
    return reduce(std::move(num_pow.num), std::move(den));
  }
  if (a.is_rational()) {
    if (auto exact = exact_rational_pow(a.num.constant_value(), e)) return frac_rational(*exact);
  }
  return root_of(a, e);
}

Frac frac_exp(const Frac& u) {
  if (u.is_zero()) return frac_one();
  Frac acc = frac_one();
  for (const auto& t : u.num.terms) {
    Poly arg_num;
    arg_num.terms.push_back(Term{Rational(1), t.mon});
    auto arg = std::make_shared<Frac>(Frac{std::move(arg_num), u.den});
    Atom a = Atom::make_kernel(KernelFn::exp_fn, std::move(arg));
    acc = frac_mul(acc, frac_from_atom(std::move(a), t.coeff));
  }
  return acc;
}

namespace {

Frac trig_atom(KernelFn fn, const Frac& u) {
  if (u.is_zero()) return fn == KernelFn::sin_fn ? Frac{} : frac_one();
  Frac arg = u;
  bool flip = false;
  if (!arg.num.terms.empty() && arg.num.terms[0].coeff < 0) {
    arg = frac_neg(arg);
    flip = (fn == KernelFn::sin_fn);
  }
  Atom a = Atom::make_kernel(fn, std::make_shared<Frac>(std::move(arg)));
  Frac f = frac_from_atom(std::move(a), Rational(1));
  return flip ? frac_neg(f) : f;
}

}  // namespace

Frac frac_sin(const Frac& u) { return trig_atom(KernelFn::sin_fn, u); }
Frac frac_cos(const Frac& u) { return trig_atom(KernelFn::cos_fn, u); }

// ---------------------------------------------------------------------------
// exact division
// ---------------------------------------------------------------------------

namespace {

std::optional<Monomial> mon_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (j < b.factors.size()) {
    if (i >= a.factors.size()) return std::nullopt;
    int c = compare(a.factors[i].atom, b.factors[j].atom);
    if (c < 0) {
      out.factors.push_back(a.factors[i++]);
    } else if (c > 0) {
      return std::nullopt;
    } else {
      Rational e = a.factors[i].exp - b.factors[j].exp;
      if (e < 0) return std::nullopt;
      if (e != 0) out.factors.push_back(AtomPow{a.factors[i].atom, e});
      ++i, ++j;
    }
  }
  for (; i < a.factors.size(); ++i) out.factors.push_back(a.factors[i]);
  return out;
}

Poly shift_by(const Poly& p, const Monomial& inv) {
  std::vector<Term> out;
  out.reserve(p.terms.size());
  for (const auto& t : p.terms) out.push_back(Term{t.coeff, mon_mul_free(t.mon, inv)});
  return Poly{std::move(out)};
}

}  // namespace

std::optional<Poly> poly_div_exact(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) return std::nullopt;
  if (dividend.is_zero()) return Poly{};
  if (divisor.is_constant())
    return poly_scale(dividend, Rational(1) / divisor.constant_value());

  Monomial ca = monomial_content(dividend);
  Monomial cb = monomial_content(divisor);
  Poly rem = shift_by(dividend, mon_inverse(ca));
  Poly div = shift_by(divisor, mon_inverse(cb));
  sort_terms(rem);
  sort_terms(div);

  const Term lead_div = div.terms.front();
  std::vector<Term> quotient;
  int guard = 0;
  while (!rem.terms.empty()) {
    if (++guard > 20000) return std::nullopt;  // pathological; treated as not divisible
    const Term lead = rem.terms.front();
    auto q_mon = mon_div(lead.mon, lead_div.mon);
    if (!q_mon) return std::nullopt;
    Term q{lead.coeff / lead_div.coeff, std::move(*q_mon)};
    std::vector<Term> sub;
    sub.reserve(div.terms.size());
    for (const auto& t : div.terms)
      sub.push_back(Term{-q.coeff * t.coeff, mon_mul_free(q.mon, t.mon)});
    Poly subp{std::move(sub)};
    sort_terms(subp);
    rem = poly_add(rem, combine_sorted(std::move(subp.terms)));
    quotient.push_back(std::move(q));
  }
  Monomial net = mon_mul_free(ca, mon_inverse(cb));
  // Free-algebra quotients may hold root powers >= 1; push them back through
  // the invariant-restoring builder (positive powers only, so no denominators).
  Frac acc;
  std::vector<Term> clean;
  bool any_heavy = false;
  for (auto& t : quotient) {
    std::vector<AtomPow> factors = mon_mul_free(t.mon, net).factors;
    MonomialBuild mb = finalize_monomial(std::move(factors));
    if (!mb.has_multiplier) {
      clean.push_back(Term{t.coeff, std::move(mb.mon)});
    } else {
      Poly tp;
      tp.terms.push_back(Term{t.coeff, std::move(mb.mon)});
      Frac piece = frac_mul(Frac{std::move(tp), {}}, mb.multiplier);
      acc = any_heavy ? frac_add(acc, piece) : piece;
      any_heavy = true;
    }
  }
  Frac out = frac_from_poly(Poly{std::move(clean)});
  if (any_heavy) out = frac_add(out, acc);
  if (!out.den.empty()) return std::nullopt;
  return out.num;
}

// ---------------------------------------------------------------------------
// differentiation
// ---------------------------------------------------------------------------

namespace {

Frac diff_atom_power(const Atom& atom, const Rational& e, SymbolId v);

Frac diff_poly(const Poly& p, SymbolId v) {
  Frac acc;
  for (const auto& t : p.terms) {
    for (std::size_t j = 0; j < t.mon.factors.size(); ++j) {
      const auto& f = t.mon.factors[j];
      Frac dfac = diff_atom_power(f.atom, f.exp, v);
      if (dfac.is_zero()) continue;
      Monomial rest;
      for (std::size_t k = 0; k < t.mon.factors.size(); ++k)
        if (k != j) rest.factors.push_back(t.mon.factors[k]);
      acc = frac_add(acc, frac_mul_term(dfac, t.coeff, rest));
    }
  }
  return acc;
}

Frac diff_frac_impl(const Frac& f, SymbolId v) {
  Frac acc = diff_poly(f.num, v);
  if (!f.den.empty()) acc = reduce(std::move(acc.num), merge_den(acc.den, f.den, false));
  for (const auto& fac : f.den) {
    Frac dbase = diff_poly(fac.base, v);
    if (dbase.is_zero()) continue;
    Frac piece =
        frac_mul(Frac{f.num, merge_den(f.den, {FactorPow{fac.base, 1}}, false)}, dbase);
    piece = frac_mul(piece, frac_rational(Rational(-fac.exp)));
    acc = frac_add(acc, piece);
  }
  return acc;
}

Frac diff_atom_power(const Atom& atom, const Rational& e, SymbolId v) {
  if (atom.is_symbol()) {
    if (atom.symbol != v) return {};
    return frac_mul(frac_rational(e), frac_from_atom(atom, e - 1));
  }
  const Kernel& k = *atom.kernel;
  Frac darg = diff_frac_impl(*k.arg, v);
  if (darg.is_zero()) return {};
  switch (k.fn) {
    case KernelFn::exp_fn:
      return frac_mul(frac_mul(frac_rational(e), darg), frac_from_atom(atom, e));
    case KernelFn::sin_fn: {
      Frac chain = frac_mul(frac_rational(e), darg);
      chain = frac_mul(chain, frac_from_atom(atom, e - 1));
      return frac_mul(chain, trig_atom(KernelFn::cos_fn, *k.arg));
    }
    case KernelFn::cos_fn: {
      Frac chain = frac_mul(frac_rational(-e), darg);
      chain = frac_mul(chain, frac_from_atom(atom, e - 1));
      return frac_mul(chain, trig_atom(KernelFn::sin_fn, *k.arg));
    }
    case KernelFn::root_fn: {
      Frac chain = frac_mul(frac_rational(e), darg);
      return frac_mul(chain, frac_pow(*k.arg, e - 1));
    }
  }
  return {};
}

}  // namespace

Frac frac_diff(const Frac& f, SymbolId v) { return diff_frac_impl(f, v); }

// ---------------------------------------------------------------------------
// numeric evaluation
// ---------------------------------------------------------------------------

double EvalPoint::get(SymbolId id) const {
  if (id >= values.size() || std::isnan(values[id]))
    throw SingularEvaluation("unassigned symbol in numeric evaluation");
  return values[id];
}

double pow_real(double base, const Rational& e) {
  if (is_integer(e)) {
    if (base == 0 && e < 0) throw SingularEvaluation("division by zero in power");
    return std::pow(base, to_double(e));
  }
  if (base < 0) throw SingularEvaluation("fractional power of a negative base");
  if (base == 0 && e < 0) throw SingularEvaluation("zero base with negative fractional power");
  return std::pow(base, to_double(e));
}

namespace {

struct NumMag {
  double value;
  double magnitude;
};

NumMag eval_atom(const Atom& a, const EvalPoint& p);

NumMag eval_frac_inner(const Frac& f, const EvalPoint& p) {
  double value = 0, mag = 0;
  for (const auto& t : f.num.terms) {
    double tv = to_double(t.coeff);
    for (const auto& fac : t.mon.factors) {
      NumMag av = eval_atom(fac.atom, p);
      tv *= pow_real(av.value, fac.exp);
    }
    value += tv;
    mag += std::abs(tv);
  }
  for (const auto& fac : f.den) {
    NumMag be = eval_frac_inner(Frac{fac.base, {}}, p);
    if (std::abs(be.value) < 1e-250 || std::abs(be.value) < 1e-12 * be.magnitude)
      throw SingularEvaluation("denominator vanishes at evaluation point");
    double dpow = pow_real(be.value, Rational(fac.exp));
    value /= dpow;
    mag /= std::abs(dpow);
  }
  if (!std::isfinite(value)) throw SingularEvaluation("non-finite value in evaluation");
  return NumMag{value, mag};
}

NumMag eval_atom(const Atom& a, const EvalPoint& p) {
  if (a.is_symbol()) {
    double v = p.get(a.symbol);
    return NumMag{v, std::abs(v)};
  }
  NumMag arg = eval_frac_inner(*a.kernel->arg, p);
  switch (a.kernel->fn) {
    case KernelFn::exp_fn: {
      double v = std::exp(arg.value);
      if (!std::isfinite(v)) throw SingularEvaluation("exp overflow in evaluation");
      return NumMag{v, v};
    }
    case KernelFn::sin_fn:
      return NumMag{std::sin(arg.value), 1.0};
    case KernelFn::cos_fn:
      return NumMag{std::cos(arg.value), 1.0};
    case KernelFn::root_fn:
      if (arg.value < 0) throw SingularEvaluation("fractional power of a negative base");
      return NumMag{arg.value, std::abs(arg.value)};
  }
  throw SingularEvaluation("unreachable kernel");
}

}  // namespace

EvalResult frac_eval(const Frac& f, const EvalPoint& p) {
  NumMag r = eval_frac_inner(f, p);
  return EvalResult{r.value, r.magnitude};
}

}  // namespace zsym::detail
