#include "dp.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace probterm;
using probterm::testing::load_corpus;

namespace {

// Compound terms compare modulo normalization (argument order abstracted).
bool same_normalized(const Term& a, const Term& b) {
  return normalize_compound(a) == normalize_compound(b);
}

Term tuple_app(const std::string& name, std::vector<Term> args) {
  int arity = static_cast<int>(args.size());
  return Term::app(Symbol{name, arity, SymbolKind::Tuple}, std::move(args));
}

}  // namespace

TEST_CASE("tuple symbol naming") {
  Ptrs div = load_corpus("div");
  TupleNames names(div.signature);
  CHECK(names.tuple_symbol("minus").name == "M");
  CHECK(names.tuple_symbol("div").name == "D");

  // collision with an existing symbol falls back to the # suffix
  Ptrs eo = load_corpus("even_odd");
  TupleNames eo_names(eo.signature);
  CHECK(eo_names.tuple_symbol("even").name == "E");
  CHECK(eo_names.tuple_symbol("odd").name == "odd#");  // "O" is taken

  // two defined symbols mapping to the same letter both fall back
  Ptrs clash = parse_ptrs("(VAR x) (RULES ga(x) -> {1: x} gb(x) -> {1: x})");
  TupleNames clash_names(clash.signature);
  CHECK(clash_names.tuple_symbol("ga").name == "ga#");
  CHECK(clash_names.tuple_symbol("gb").name == "gb#");

  // numeric tails survive
  Ptrs sub = parse_ptrs("(RULES b_1 -> {1: stop} b2 -> {1: stop})");
  TupleNames sub_names(sub.signature);
  CHECK(sub_names.tuple_symbol("b_1").name == "B_1");
  CHECK(sub_names.tuple_symbol("b2").name == "B2");
}

TEST_CASE("sharp") {
  Ptrs div = load_corpus("div");
  TupleNames names(div.signature);
  Term gx = parse_term("minus(x1, x2)", div);
  Term sharped = names.sharp(gx);
  CHECK(sharped == tuple_app("M", {Term::var("x1"), Term::var("x2")}));
  CHECK(sharped.root().kind == SymbolKind::Tuple);

  CHECK_THROWS_AS(names.sharp(parse_term("O", div)), std::invalid_argument);
}

TEST_CASE("dp_transform") {
  Ptrs div = load_corpus("div");
  TupleNames names(div.signature);

  // nested defined symbols, outermost first
  Term rhs = parse_term("s(div(minus(x1, x2), s(x2)))", div);
  Term dp = dp_transform(rhs, names);
  REQUIRE(dp.root() == compound_symbol(2));
  CHECK(dp.args()[0] == tuple_app("D", {parse_term("minus(x1, x2)", div),
                                        parse_term("s(x2)", div)}));
  CHECK(dp.args()[1] == tuple_app("M", {Term::var("x1"), Term::var("x2")}));

  // a variable has no defined subterms
  CHECK(dp_transform(Term::var("x1"), names) == Term::app(compound_symbol(0)));

  // duplicate occurrences are kept as a multiset
  Ptrs rw = load_corpus("rw");
  TupleNames rw_names(rw.signature);
  Term ggx = parse_term("g(g(x1))", rw);
  Term dp_rw = dp_transform(ggx, rw_names);
  REQUIRE(dp_rw.root() == compound_symbol(2));
  CHECK(dp_rw.args()[0] == tuple_app("G", {parse_term("g(x1)", rw)}));
  CHECK(dp_rw.args()[1] == tuple_app("G", {Term::var("x1")}));
}

TEST_CASE("dp_transform argument count equals defined-subterm occurrences") {
  Ptrs div = load_corpus("div");
  TupleNames names(div.signature);
  for (const char* text : {"s(s(x1))", "minus(minus(x1, x2), minus(x1, x2))",
                           "div(minus(x1, x2), s(minus(x1, x2)))", "x1", "O"}) {
    Term t = parse_term(text, div);
    int defined = 0;
    for (const Position& pos : all_positions(t)) {
      Term sub = subterm_at(t, pos);
      if (sub.is_app() && sub.root().kind == SymbolKind::Defined) ++defined;
    }
    CHECK(static_cast<int>(dp_transform(t, names).args().size()) == defined);
  }
}

TEST_CASE("normalize_compound flattens and sorts") {
  Term x = Term::var("x");
  Term y = Term::var("y");
  Term com0 = Term::app(compound_symbol(0));

  // Com_2(Com_1(x), Com_2(x, y)) normalizes to Com_3(x, x, y)
  Term nested = Term::app(compound_symbol(2),
                          {Term::app(compound_symbol(1), {x}),
                           Term::app(compound_symbol(2), {x, y})});
  Term flat = normalize_compound(nested);
  CHECK(flat == Term::app(compound_symbol(3), {x, x, y}));

  // already flat stays put
  Term g = tuple_app("G", {x});
  CHECK(normalize_compound(Term::app(compound_symbol(1), {g})) ==
        Term::app(compound_symbol(1), {g}));

  // empty compounds collapse
  CHECK(normalize_compound(Term::app(compound_symbol(2), {com0, com0})) == com0);
}

TEST_CASE("normalization is idempotent and permutation-invariant") {
  testing::TermGen gen(2024);
  for (int i = 0; i < 500; ++i) {
    // random flat or nested compound over tuple-rooted arguments
    std::vector<Term> args;
    int n = static_cast<int>(gen.below(4));
    for (int k = 0; k < n; ++k) {
      Term payload = gen.term(2);
      if (gen.below(3) == 0) {
        args.push_back(Term::app(compound_symbol(1), {tuple_app("G", {payload})}));
      } else {
        args.push_back(tuple_app("G", {payload}));
      }
    }
    Term compound = Term::app(compound_symbol(n), args);
    Term normalized = normalize_compound(compound);

    CHECK(normalize_compound(normalized) == normalized);
    for (const Term& arg : normalized.args()) {
      CHECK(!(arg.is_app() && is_compound(arg.root())));
    }

    // shuffle the flat arguments: same normal form
    std::vector<Term> shuffled = args;
    for (std::size_t k = shuffled.size(); k > 1; --k) {
      std::swap(shuffled[k - 1], shuffled[gen.below(k)]);
    }
    CHECK(normalize_compound(Term::app(compound_symbol(n), shuffled)) == normalized);
  }
}

TEST_CASE("dependency tuples of the division system match the four tuples") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  REQUIRE(prob.pairs.size() == 4);

  auto x = Term::var("x1");
  auto y = Term::var("x2");
  auto O = parse_term("O", div);
  auto sx = parse_term("s(x1)", div);
  auto sy = parse_term("s(x2)", div);

  // (1) <M(x,O), minus(x,O)> -> {1: <Com_0, x>}
  const CoupledDt& dt1 = prob.pairs[0];
  CHECK(dt1.lhs_sharp == tuple_app("M", {x, O}));
  CHECK(dt1.lhs_orig == parse_term("minus(x1, O)", div));
  REQUIRE(dt1.branches.size() == 1);
  CHECK(dt1.branches[0].prob == 1);
  CHECK(dt1.branches[0].dp == Term::app(compound_symbol(0)));
  CHECK(dt1.branches[0].rhs == x);

  // (2) <M(s(x),s(y)), minus(s(x),s(y))> -> {1: <Com_1(M(x,y)), minus(x,y)>}
  const CoupledDt& dt2 = prob.pairs[1];
  CHECK(dt2.lhs_sharp == tuple_app("M", {sx, sy}));
  REQUIRE(dt2.branches.size() == 1);
  CHECK(dt2.branches[0].dp ==
        Term::app(compound_symbol(1), {tuple_app("M", {x, y})}));
  CHECK(dt2.branches[0].rhs == parse_term("minus(x1, x2)", div));

  // (3) <D(O,s(y)), div(O,s(y))> -> {1: <Com_0, O>}; its only variable is
  // canonically renamed to x1
  const CoupledDt& dt3 = prob.pairs[2];
  CHECK(dt3.lhs_sharp == tuple_app("D", {O, parse_term("s(x1)", div)}));
  CHECK(dt3.branches[0].dp == Term::app(compound_symbol(0)));
  CHECK(dt3.branches[0].rhs == O);

  // (4) <D(s(x),s(y)), div(s(x),s(y))> ->
  //       {1/2: <Com_1(D(s(x),s(y))), div(s(x),s(y))>,
  //        1/2: <Com_2(D(minus(x,y),s(y)), M(x,y)), s(div(minus(x,y),s(y)))>}
  const CoupledDt& dt4 = prob.pairs[3];
  CHECK(dt4.lhs_sharp == tuple_app("D", {sx, sy}));
  REQUIRE(dt4.branches.size() == 2);
  CHECK(dt4.branches[0].prob == Rat(1, 2));
  CHECK(dt4.branches[0].dp ==
        Term::app(compound_symbol(1), {tuple_app("D", {sx, sy})}));
  CHECK(dt4.branches[0].rhs == parse_term("div(s(x1), s(x2))", div));
  Term expected_dp4 = Term::app(
      compound_symbol(2),
      {tuple_app("D", {parse_term("minus(x1, x2)", div), sy}), tuple_app("M", {x, y})});
  CHECK(same_normalized(dt4.branches[1].dp, expected_dp4));
  CHECK(dt4.branches[1].rhs == parse_term("s(div(minus(x1, x2), s(x2)))", div));

  // the coupled rule of every DT is its originating rule
  for (std::size_t i = 0; i < prob.pairs.size(); ++i) {
    CHECK(prob.pairs[i].coupled_rule() == div.rules[i]);
  }
}

TEST_CASE("dependency tuple of a two-constant branching rule") {
  // a -> {1/2: s(b1), 1/2: s(b2)} with b1, b2 also defined
  Ptrs ra = parse_ptrs(
      "(VAR x) (RULES a -> {1/2: s(b1), 1/2: s(b2)}"
      " b1 -> {1: stop} b2 -> {1: stop} f(x) -> {1: x})");
  DpProblem prob = dependency_tuples(ra);
  const CoupledDt& dt = prob.pairs[0];
  CHECK(dt.lhs_sharp == tuple_app("A", {}));
  REQUIRE(dt.branches.size() == 2);
  CHECK(dt.branches[0].dp == Term::app(compound_symbol(1), {tuple_app("B1", {})}));
  CHECK(dt.branches[0].rhs == parse_term("s(b1)", ra));
  CHECK(dt.branches[1].dp == Term::app(compound_symbol(1), {tuple_app("B2", {})}));
}

TEST_CASE("dependency tuple of the random walk") {
  Ptrs rw = load_corpus("rw");
  DpProblem prob = dependency_tuples(rw);
  REQUIRE(prob.pairs.size() == 1);
  const CoupledDt& dt = prob.pairs[0];
  Term x = Term::var("x1");
  CHECK(dt.lhs_sharp == tuple_app("G", {x}));
  CHECK(dt.lhs_orig == parse_term("g(x1)", rw));
  REQUIRE(dt.branches.size() == 2);
  CHECK(dt.branches[0].dp == Term::app(compound_symbol(0)));
  CHECK(dt.branches[0].rhs == x);
  Term expected = Term::app(compound_symbol(2), {tuple_app("G", {parse_term("g(x1)", rw)}),
                                                 tuple_app("G", {x})});
  CHECK(same_normalized(dt.branches[1].dp, expected));
}

TEST_CASE("branch probabilities carry over to the tuples") {
  for (const char* name : {"rw", "div", "incompl", "qsort_pivot", "dice"}) {
    Ptrs r = load_corpus(name);
    DpProblem prob = dependency_tuples(r);
    REQUIRE(prob.pairs.size() == r.rules.size());
    for (std::size_t i = 0; i < prob.pairs.size(); ++i) {
      REQUIRE(prob.pairs[i].branches.size() == r.rules[i].rhs.size());
      for (std::size_t j = 0; j < prob.pairs[i].branches.size(); ++j) {
        CHECK(prob.pairs[i].branches[j].prob == r.rules[i].rhs.branches[j].prob);
      }
    }
  }
}

TEST_CASE("R_1 and R_2 share the g-tuple and differ only in the h-rule body") {
  DpProblem p1 = dependency_tuples(load_corpus("r1"));
  DpProblem p2 = dependency_tuples(load_corpus("r2"));
  REQUIRE(p1.pairs.size() == 2);
  REQUIRE(p2.pairs.size() == 2);
  CHECK(p1.pairs[0] == p2.pairs[0]);  // the g-rule tuple is identical
  // the h-rule tuples have the same sharped sides and dp components
  CHECK(p1.pairs[1].lhs_sharp == p2.pairs[1].lhs_sharp);
  CHECK(p1.pairs[1].branches[0].dp == p2.pairs[1].branches[0].dp);
  CHECK(p1.pairs[1].branches[0].dp == Term::app(compound_symbol(0)));
  CHECK(!(p1.pairs[1].branches[0].rhs == p2.pairs[1].branches[0].rhs));  // f arity differs
}
