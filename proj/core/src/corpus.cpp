#include "zsym/corpus.hpp"

#include "zsym/errors.hpp"
#include "zsym/parser.hpp"

#include <sstream>

namespace zsym {

namespace {

struct ComponentRow {
  const char* tensor;
  std::vector<int> index;  // 1-based
  const char* value;
};

void add_expected(CorpusEntry& e, const SymbolTable& tab,
                  const std::vector<ComponentRow>& rows) {
  for (const auto& row : rows) {
    IndexTuple idx;
    for (int v : row.index) idx.push_back(v - 1);
    e.expected[row.tensor].push_back({idx, parse_expr(row.value, tab)});
  }
}

OneForm parse_form(const SymbolTable& tab, const std::vector<std::string>& comps) {
  OneForm f;
  for (const auto& c : comps) f.components.push_back(parse_expr(c, tab));
  return f;
}

CorpusEntry make_example1() {
  auto tab = std::make_shared<SymbolTable>();
  tab->add_coordinate("t");
  tab->add_coordinate("ph");
  tab->add_coordinate("r", {Assumption::Sign::positive});
  tab->add_coordinate("z");
  Chart chart(tab, {0, 1, 2, 3});
  MetricSpec m(chart);
  m.set_g(0, 0, parse_expr("1", *tab));
  m.set_g(0, 1, parse_expr("r^2/8", *tab));
  m.set_g(1, 1, parse_expr("-r^2/8", *tab));
  m.set_g(2, 2, parse_expr("-1", *tab));
  m.set_g(3, 3, parse_expr("-1", *tab));
  m.set_one_form("A", parse_form(*tab, {"0", "0", "-4*r/(8+r^2)", "0"}));
  m.set_one_form("B", parse_form(*tab, {"0", "0", "-4*r/(8+r^2)", "0"}));
  m.set_one_form("D", parse_form(*tab, {"0", "0", "-4*r/(8+r^2)", "0"}));

  CorpusEntry e{"example1", std::move(m), {}, {}, "", false};
  add_expected(e, *tab,
               {
                   {"R", {1, 2, 1, 2}, "-r^2/64"},
                   {"R", {1, 3, 1, 3}, "-1/(r^2+8)"},
                   {"R", {1, 3, 2, 3}, "-1/(r^2+8)"},
                   {"R", {2, 3, 2, 3}, "-1/(r^2+8)"},
                   {"S", {1, 1}, "-2/(r^2+8)"},
                   {"S", {1, 2}, "-(r^2+16)/(8*(r^2+8))"},
                   {"S", {2, 2}, "-(r^2+16)/(8*(r^2+8))"},
                   {"S", {3, 3}, "8/(r^2+8)^2"},
                   {"DR", {1, 2, 1, 2, 3}, "r^3/(32*(r^2+8))"},
                   {"DR", {1, 2, 1, 3, 2}, "r^3/(64*(r^2+8))"},
                   {"DR", {1, 2, 2, 3, 1}, "-r^3/(64*(r^2+8))"},
                   {"DR", {1, 3, 1, 3, 3}, "4*r/(r^2+8)^2"},
                   {"DR", {1, 3, 2, 3, 3}, "4*r/(r^2+8)^2"},
                   {"DR", {2, 3, 2, 3, 3}, "4*r/(r^2+8)^2"},
                   {"DS", {1, 1, 3}, "6*r/(r^2+8)^2"},
                   {"DS", {1, 3, 1}, "r/(r^2+8)^2"},
                   {"DS", {1, 2, 3}, "r*(r^2+24)/(4*(r^2+8)^2)"},
                   {"DS", {2, 2, 3}, "r*(r^2+24)/(4*(r^2+8)^2)"},
                   {"DS", {1, 3, 2}, "r/(8*(r^2+8))"},
                   {"DS", {2, 3, 1}, "r/(8*(r^2+8))"},
                   {"DS", {2, 3, 2}, "r/(8*(r^2+8))"},
                   {"DS", {3, 3, 3}, "-32*r/(r^2+8)^3"},
               });
  e.expects.cyclic_S = SolveStatus::unique;
  e.expects.weak_S = SolveStatus::inconsistent;
  e.expects.proper = true;
  e.expects.recurrent_R = SolveStatus::inconsistent;
  e.expects.recurrent_S = SolveStatus::inconsistent;
  e.expects.gray_a = false;
  e.expects.codazzi = false;
  e.expects.rank_one = RankOneVerdict::none;
  e.expects.f_zero = true;
  e.expects.reduced_witness = {"0", "0", "-4*r/(8+r^2)", "0"};
  e.literature_note =
      "Cylindrically symmetric stationary metric with quadratic twist profile; "
      "the catalog's phi-sector entries (R[1323], R[2323], S[12], S[22] and the "
      "matching derivative rows) are not consistent with any metric of this "
      "two-function family, so the verifier reports exact residuals for them.";
  return e;
}

CorpusEntry make_example2() {
  auto tab = std::make_shared<SymbolTable>();
  tab->add_coordinate("x1", {Assumption::Sign::positive});
  tab->add_coordinate("x2");
  tab->add_coordinate("x3");
  tab->add_coordinate("x4");
  tab->add_parameter("a", {Assumption::Sign::nonzero});
  Chart chart(tab, {0, 1, 2, 3});
  MetricSpec m(chart);
  m.set_g(0, 0, parse_expr("x1^2", *tab));
  m.set_g(1, 1, parse_expr("x1^2", *tab));
  m.set_g(2, 2, parse_expr("x1^2", *tab));
  m.set_g(3, 3, parse_expr("-x1^(-2)", *tab));
  m.set_phi(parse_expr("a/x1^6 - 1/x1^4", *tab));
  m.set_one_form("A", parse_form(*tab, {"-6/x1", "0", "0", "0"}));
  m.set_one_form("B", parse_form(*tab, {"-6/x1", "0", "0", "0"}));
  m.set_one_form("D", parse_form(*tab, {"-6/x1", "0", "0", "0"}));

  CorpusEntry e{"example2", std::move(m), {}, {}, "", false};
  add_expected(e, *tab,
               {
                   {"R", {1, 2, 1, 2}, "1"},
                   {"R", {1, 3, 1, 3}, "1"},
                   {"R", {2, 3, 2, 3}, "-1"},
                   {"R", {1, 4, 1, 4}, "3/x1^4"},
                   {"R", {2, 4, 2, 4}, "-1/x1^4"},
                   {"R", {3, 4, 3, 4}, "-1/x1^4"},
                   {"S", {1, 1}, "1/x1^2"},
                   {"S", {2, 2}, "-1/x1^2"},
                   {"S", {3, 3}, "-1/x1^2"},
                   {"S", {4, 4}, "-1/x1^6"},
                   {"DR", {1, 2, 1, 2, 1}, "-4/x1"},
                   {"DR", {1, 2, 2, 3, 3}, "-2/x1"},
                   {"DR", {1, 3, 1, 3, 1}, "-4/x1"},
                   {"DR", {1, 3, 2, 3, 2}, "2/x1"},
                   {"DR", {2, 3, 2, 3, 1}, "4/x1"},
                   {"DR", {1, 4, 1, 4, 1}, "-12/x1^5"},
                   {"DR", {1, 4, 2, 4, 2}, "4/x1^5"},
                   {"DR", {1, 4, 3, 4, 3}, "4/x1^5"},
                   {"DR", {2, 4, 2, 4, 1}, "4/x1^5"},
                   {"DR", {3, 4, 3, 4, 1}, "4/x1^5"},
                   {"DS", {1, 1, 1}, "-4/x1^3"},
                   {"DS", {1, 2, 2}, "2/x1^3"},
                   {"DS", {1, 3, 3}, "2/x1^3"},
                   {"DS", {2, 2, 1}, "4/x1^3"},
                   {"DS", {3, 3, 1}, "4/x1^3"},
                   {"DS", {4, 4, 1}, "4/x1^7"},
                   {"Z", {1, 1}, "a/x1^4"},
                   {"Z", {2, 2}, "(a-2*x1^2)/x1^4"},
                   {"Z", {3, 3}, "(a-2*x1^2)/x1^4"},
                   {"Z", {4, 4}, "-a/x1^8"},
                   {"DZ", {1, 1, 1}, "-6*a/x1^5"},
                   {"DZ", {1, 2, 2}, "2/x1^3"},
                   {"DZ", {1, 3, 3}, "2/x1^3"},
                   {"DZ", {2, 2, 1}, "(8*x1^2-6*a)/x1^5"},
                   {"DZ", {3, 3, 1}, "(8*x1^2-6*a)/x1^5"},
                   {"DZ", {4, 4, 1}, "6*a/x1^9"},
               });
  e.expects.cyclic_Z = SolveStatus::unique;
  e.expects.weak_Z = SolveStatus::inconsistent;
  e.expects.cyclic_S = SolveStatus::inconsistent;
  e.expects.weak_S = SolveStatus::inconsistent;
  e.expects.proper = true;
  e.expects.recurrent_R = SolveStatus::inconsistent;
  e.expects.recurrent_S = SolveStatus::inconsistent;
  e.expects.gray_a = false;
  e.expects.codazzi = false;
  e.expects.rank_one = RankOneVerdict::none;
  e.expects.f_zero = true;
  e.literature_note =
      "Lorentzian metric on the half-space x1 > 0, diagonal with signature "
      "(+,+,+,-); carries the Z-tensor scalar a/x1^6 - 1/x1^4 and a unique "
      "associated 1-form triple.";
  return e;
}

CorpusEntry make_example3() {
  auto tab = std::make_shared<SymbolTable>();
  tab->add_coordinate("x1");
  tab->add_coordinate("x2");
  tab->add_coordinate("x3");
  tab->add_coordinate("x4", {Assumption::Sign::nonzero});
  tab->add_parameter("alpha", {Assumption::Sign::nonzero});
  tab->add_parameter("beta", {Assumption::Sign::nonzero});
  Chart chart(tab, {0, 1, 2, 3});
  MetricSpec m(chart);
  m.set_g(0, 0, parse_expr("exp(x1)*(x3^2+x3+1)", *tab));
  m.set_g(0, 1, parse_expr("1", *tab));
  m.set_g(2, 2, parse_expr("1", *tab));
  m.set_g(3, 3, parse_expr("x1^2", *tab));
  m.set_one_form("A", parse_form(*tab, {"alpha", "0", "0", "0"}));
  m.set_one_form("B", parse_form(*tab, {"beta", "0", "0", "0"}));
  m.set_one_form("D", parse_form(*tab, {"3-alpha-beta", "0", "0", "0"}));

  CorpusEntry e{"example3", std::move(m), {}, {}, "", false};
  add_expected(e, *tab,
               {
                   {"R", {1, 3, 1, 3}, "-exp(x1)"},
                   {"S", {1, 1}, "exp(x1)"},
                   {"DR", {1, 3, 1, 3, 1}, "-exp(x1)"},
                   {"DS", {1, 1, 1}, "exp(x1)"},
               });
  e.expects.cyclic_S = SolveStatus::family;
  e.expects.cyclic_S_dim = 2;
  e.expects.weak_S = SolveStatus::family;
  e.expects.weak_S_dim = 2;
  e.expects.proper = false;
  e.expects.recurrent_R = SolveStatus::unique;
  e.expects.recurrent_S = SolveStatus::unique;
  e.expects.recurrence_pi = {"1", "0", "0", "0"};
  e.expects.gray_a = false;
  e.expects.codazzi = true;
  e.expects.rank_one = RankOneVerdict::rank_one_null;
  e.expects.reduced_witness = {"1", "0", "0", "0"};
  e.literature_note =
      "Open-subset metric with one exponential block; recurrent and Ricci "
      "recurrent with recurrence direction dx1, and a two-parameter family of "
      "associated 1-forms (the catalog's non-vanishing scalars).";
  return e;
}

/// x4 > 0 warped metric with three equal conformal factors; the body of the
/// metric is transcribed from the cited catalog entry, which only restates
/// phi and one derivative component.
MetricSpec make_example4_metric(std::shared_ptr<SymbolTable>& tab_out) {
  auto tab = std::make_shared<SymbolTable>();
  tab->add_coordinate("x1");
  tab->add_coordinate("x2");
  tab->add_coordinate("x3");
  tab->add_coordinate("x4", {Assumption::Sign::positive});
  Chart chart(tab, {0, 1, 2, 3});
  MetricSpec m(chart);
  m.set_g(0, 0, parse_expr("x4^(4/3)", *tab));
  m.set_g(1, 1, parse_expr("x4^(4/3)", *tab));
  m.set_g(2, 2, parse_expr("x4^(4/3)", *tab));
  m.set_g(3, 3, parse_expr("1", *tab));
  tab_out = tab;
  return m;
}

std::vector<ComponentRow> example4_common_rows() {
  return {
      {"R", {1, 2, 1, 2}, "-4*x4^(2/3)/9"},
      {"R", {1, 3, 1, 3}, "-4*x4^(2/3)/9"},
      {"R", {2, 3, 2, 3}, "-4*x4^(2/3)/9"},
      {"R", {1, 4, 1, 4}, "2/(9*x4^(2/3))"},
      {"R", {2, 4, 2, 4}, "2/(9*x4^(2/3))"},
      {"R", {3, 4, 3, 4}, "2/(9*x4^(2/3))"},
      {"S", {1, 1}, "2/(3*x4^(2/3))"},
      {"S", {2, 2}, "2/(3*x4^(2/3))"},
      {"S", {3, 3}, "2/(3*x4^(2/3))"},
      {"S", {4, 4}, "-2/(3*x4^2)"},
      {"DR", {1, 2, 1, 2, 4}, "8/(9*x4^(1/3))"},
      {"DR", {1, 2, 1, 4, 2}, "4/(9*x4^(1/3))"},
      {"DR", {1, 2, 2, 4, 1}, "-4/(9*x4^(1/3))"},
      {"DR", {1, 3, 1, 3, 4}, "8/(9*x4^(1/3))"},
      {"DR", {1, 3, 1, 4, 3}, "4/(9*x4^(1/3))"},
      {"DR", {1, 3, 3, 4, 1}, "-4/(9*x4^(1/3))"},
      {"DR", {1, 4, 1, 4, 4}, "-4/(9*x4^(5/3))"},
      {"DR", {2, 3, 2, 3, 4}, "8/(9*x4^(1/3))"},
      {"DR", {2, 3, 2, 4, 3}, "4/(9*x4^(1/3))"},
      {"DR", {2, 3, 3, 4, 2}, "-4/(9*x4^(1/3))"},
      {"DR", {2, 4, 2, 4, 4}, "-4/(9*x4^(5/3))"},
      {"DR", {3, 4, 3, 4, 4}, "-4/(9*x4^(5/3))"},
      {"DS", {1, 1, 4}, "-4/(3*x4^(5/3))"},
      {"DS", {2, 2, 4}, "-4/(3*x4^(5/3))"},
      {"DS", {3, 3, 4}, "-4/(3*x4^(5/3))"},
      {"DS", {1, 4, 1}, "-8/(9*x4^(5/3))"},
      {"DS", {2, 4, 2}, "-8/(9*x4^(5/3))"},
      {"DS", {3, 4, 3}, "-8/(9*x4^(5/3))"},
      {"DS", {4, 4, 4}, "4/(3*x4^3)"},
  };
}

CorpusEntry make_example4a() {
  std::shared_ptr<SymbolTable> tab;
  MetricSpec m = make_example4_metric(tab);
  m.set_phi(parse_expr("1/x4^2", *tab));
  CorpusEntry e{"example4a", std::move(m), {}, {}, "", true};
  add_expected(e, *tab, example4_common_rows());
  add_expected(e, *tab,
               {
                   {"Z", {1, 1}, "5/(3*x4^(2/3))"},
                   {"Z", {2, 2}, "5/(3*x4^(2/3))"},
                   {"Z", {3, 3}, "5/(3*x4^(2/3))"},
                   {"Z", {4, 4}, "1/(3*x4^2)"},
                   {"DZ", {1, 1, 4}, "-10/(3*x4^(5/3))"},
                   {"DZ", {2, 2, 4}, "-10/(3*x4^(5/3))"},
                   {"DZ", {3, 3, 4}, "-10/(3*x4^(5/3))"},
                   {"DZ", {1, 4, 1}, "-8/(9*x4^(5/3))"},
                   {"DZ", {2, 4, 2}, "-8/(9*x4^(5/3))"},
                   {"DZ", {3, 4, 3}, "-8/(9*x4^(5/3))"},
                   {"DZ", {4, 4, 4}, "-2/(3*x4^3)"},
               });
  e.expects.cyclic_Z = SolveStatus::inconsistent;
  e.expects.weak_Z = SolveStatus::inconsistent;
  e.literature_note =
      "Transcribed warped metric, phi = 1/x4^2: the derivative component "
      "Z[14,1] = -8/(9 x4^(5/3)) obstructs the cyclic Z-symmetry condition.";
  return e;
}

CorpusEntry make_example4b() {
  std::shared_ptr<SymbolTable> tab;
  MetricSpec m = make_example4_metric(tab);
  m.set_phi(parse_expr("2/(3*x4^2)", *tab));
  CorpusEntry e{"example4b", std::move(m), {}, {}, "", true};
  add_expected(e, *tab, example4_common_rows());
  add_expected(e, *tab,
               {
                   {"Z", {1, 1}, "4/(3*x4^(2/3))"},
                   {"Z", {2, 2}, "4/(3*x4^(2/3))"},
                   {"Z", {3, 3}, "4/(3*x4^(2/3))"},
                   {"DZ", {1, 1, 4}, "-8/(3*x4^(5/3))"},
                   {"DZ", {2, 2, 4}, "-8/(3*x4^(5/3))"},
                   {"DZ", {3, 3, 4}, "-8/(3*x4^(5/3))"},
                   {"DZ", {1, 4, 1}, "-8/(9*x4^(5/3))"},
                   {"DZ", {2, 4, 2}, "-8/(9*x4^(5/3))"},
                   {"DZ", {3, 4, 3}, "-8/(9*x4^(5/3))"},
               });
  e.expects.cyclic_Z = SolveStatus::unique;
  e.expects.weak_Z = SolveStatus::unique;
  e.expects.proper = false;
  e.literature_note =
      "Transcribed warped metric, phi = 2/(3 x4^2): weakly Z-symmetric, hence "
      "improperly weakly cyclic Z-symmetric.";
  return e;
}

}  // namespace

std::vector<CorpusEntry> builtin_entries(bool include_transcribed) {
  std::vector<CorpusEntry> out;
  out.push_back(make_example1());
  out.push_back(make_example2());
  out.push_back(make_example3());
  if (include_transcribed) {
    out.push_back(make_example4a());
    out.push_back(make_example4b());
  }
  return out;
}

std::vector<std::string> builtin_names(bool include_transcribed) {
  std::vector<std::string> names;
  for (const auto& e : builtin_entries(include_transcribed)) names.push_back(e.name);
  return names;
}

CorpusEntry builtin_entry(const std::string& name) {
  for (auto& e : builtin_entries(true))
    if (e.name == name) return e;
  throw Error("unknown builtin metric '" + name + "'");
}

}  // namespace zsym
