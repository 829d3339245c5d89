#include "polynomial.hpp"

#include "depgraph.hpp"
#include "helpers.hpp"
#include "simulator.hpp"

#include <doctest.h>

using namespace probterm;
using probterm::testing::load_corpus;

namespace {

Polynomial linear(Rat constant, std::vector<std::pair<std::string, Rat>> coeffs) {
  Polynomial p = Polynomial::constant(constant);
  for (auto& [var, c] : coeffs) {
    Polynomial term = Polynomial::variable(var).scaled(c);
    p += term;
  }
  return p;
}

// the worked division certificate: O -> 0, s(x) -> 2x+1, first projections
PolyInterp div_interp() {
  PolyInterp interp;
  interp.set("O", Polynomial::constant(0));
  interp.set("s", linear(1, {{"x1", 2}}));
  interp.set("minus", linear(0, {{"x1", 1}}));
  interp.set("div", linear(0, {{"x1", 1}}));
  interp.set("M", linear(0, {{"x1", 1}}));
  interp.set("D", linear(0, {{"x1", 1}}));
  return interp;
}

PolyInterp rw_interp() {
  PolyInterp interp;
  interp.set("g", linear(1, {{"x1", 1}}));
  interp.set("O", Polynomial::constant(0));
  return interp;
}

}  // namespace

TEST_CASE("interpret") {
  Ptrs rw = load_corpus("rw");
  PolyInterp interp = rw_interp();

  // g(g(x)) -> x + 2 under g |-> x1 + 1
  Polynomial p = interpret(parse_term("g(g(x1))", rw), interp);
  CHECK(p == linear(2, {{"x1", 1}}));
  CHECK(interpret(parse_term("O", rw), interp) == Polynomial::constant(0));

  // compound symbols always sum their arguments
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  Polynomial dp4 = interpret(prob.pairs[3].branches[1].dp, div_interp());
  CHECK(dp4 == linear(0, {{"x1", 2}}));  // x + x = 2x

  // unmapped symbol
  PolyInterp empty;
  CHECK_THROWS_AS(interpret(parse_term("g(x1)", rw), empty), std::invalid_argument);
}

TEST_CASE("interpret rejects non-multilinear compositions") {
  Ptrs sys = parse_ptrs("(VAR x) (RULES p(x) -> {1: f(x, x)})");
  PolyInterp interp;
  Polynomial cross;
  cross.set({"x1", "x2"}, 1);
  interp.set("f", cross);        // f |-> x1*x2
  interp.set("p", linear(0, {{"x1", 1}}));
  CHECK_THROWS_AS(interpret(parse_term("f(g1(x1), g1(x1))", sys), [&] {
                    PolyInterp i = interp;
                    i.set("g1", linear(1, {{"x1", 1}}));
                    return i;
                  }()),
                  NonMultilinear);
}

TEST_CASE("expected_poly") {
  Ptrs rw = load_corpus("rw");
  PolyInterp interp = rw_interp();
  Polynomial expected = expected_poly(rw.rules[0].rhs, interp);
  CHECK(expected == linear(1, {{"x1", 1}}));  // 1/2 x + 1/2 (x+2) = x + 1

  MultiDist<Term> point;
  point.branches.push_back({Rat(1), parse_term("g(O)", rw)});
  CHECK(expected_poly(point, interp) == interpret(parse_term("g(O)", rw), interp));

  // 5/8 * 6 + 3/8 * 0 = 15/4 under the incompleteness certificate
  Ptrs incompl = load_corpus("incompl");
  PolyInterp cert;
  cert.set("f", linear(2, {{"x1", 1}}));
  cert.set("g", Polynomial::constant(4));
  cert.set("b", Polynomial::constant(3));
  cert.set("stop", Polynomial::constant(0));
  Polynomial e = expected_poly(incompl.rules[0].rhs, cert);
  CHECK(e == Polynomial::constant(Rat(15, 4)));
}

TEST_CASE("abs_geq and abs_gt") {
  Polynomial x = Polynomial::variable("x");
  Polynomial y = Polynomial::variable("y");

  CHECK(abs_geq(x + Polynomial::constant(1), x));
  CHECK(abs_geq(linear(1, {{"x", 2}}), linear(Rat(1, 2), {{"x", 2}})));
  CHECK(!abs_geq(x, y));

  CHECK(abs_gt(x + Polynomial::constant(1), x));
  CHECK(abs_gt(Polynomial::constant(4), Polynomial::constant(3)));
  CHECK(!abs_gt(x, x));
  CHECK(!abs_gt(x + Polynomial::constant(Rat(1, 2)), x));  // needs a full unit
}

TEST_CASE("absolute positiveness agrees with sampled evaluation") {
  SplitMix64 rng(5150);
  int positives = 0;
  for (int i = 0; i < 400; ++i) {
    // random polynomial pair over up to 3 variables, coefficients in [-3, 3]
    auto random_poly = [&] {
      Polynomial p;
      const char* vars[] = {"x", "y", "z"};
      for (int m = 0; m < 4; ++m) {
        Monomial mono;
        for (int v = 0; v < 3; ++v) {
          if (rng.below(2)) mono.push_back(vars[v]);
        }
        Rat c(static_cast<long>(rng.below(7)) - 3, 1 + static_cast<long>(rng.below(2)));
        Polynomial single;
        single.set(mono, c);
        p += single;
      }
      return p;
    };
    Polynomial p = random_poly();
    Polynomial q = random_poly();
    bool geq = abs_geq(p, q);
    bool gt = abs_gt(p, q);
    if (geq) ++positives;
    for (int pt = 0; pt < (geq || gt ? 1000 : 10); ++pt) {
      std::map<std::string, Rat> point{{"x", Rat(rng.below(21))},
                                       {"y", Rat(rng.below(21))},
                                       {"z", Rat(rng.below(21))}};
      if (geq) CHECK(p.eval(point) >= q.eval(point));
      if (gt) CHECK(p.eval(point) > q.eval(point));
    }
  }
  CHECK(positives > 5);  // the sample actually exercises the positive path
}

TEST_CASE("multilinearity gives linearity of expectation") {
  SplitMix64 rng(777);
  Symbol f3{"ctx", 3, SymbolKind::Constructor};
  Symbol u1{"u", 1, SymbolKind::Constructor};
  Symbol c0{"k", 0, SymbolKind::Constructor};

  for (int round = 0; round < 200; ++round) {
    // random multilinear template for a ternary context symbol
    PolyInterp interp;
    Polynomial templ;
    for (int mask = 0; mask < 8; ++mask) {
      Monomial mono;
      for (int b = 0; b < 3; ++b) {
        if (mask & (1 << b)) mono.push_back(formal_var(b + 1));
      }
      Polynomial single;
      single.set(mono, Rat(rng.below(4)));
      templ += single;
    }
    interp.set("ctx", templ);
    interp.set("u", linear(Rat(rng.below(3)), {{"x1", Rat(rng.below(3))}}));
    interp.set("k", Polynomial::constant(Rat(rng.below(5))));

    // random distribution over one-variable terms in the hole position
    Term x = Term::var("x");
    std::vector<Term> payloads{x, Term::app(u1, {x}), Term::app(u1, {Term::app(c0)}),
                               Term::app(c0)};
    MultiDist<Term> dist;
    int k = 2 + static_cast<int>(rng.below(2));
    std::vector<long> weights;
    long total = 0;
    for (int j = 0; j < k; ++j) {
      long w = 1 + static_cast<long>(rng.below(5));
      weights.push_back(w);
      total += w;
    }
    for (int j = 0; j < k; ++j) {
      dist.branches.push_back({Rat(weights[j], total), payloads[rng.below(payloads.size())]});
    }

    // ground side arguments keep the composition multilinear
    Term left = Term::app(c0);
    Term right = Term::app(u1, {Term::app(c0)});

    // Pol(ctx(left, E[dist], right)) == E[Pol(ctx(left, dist_j, right))]
    Polynomial mixture = expected_poly(dist, interp);
    Polynomial lhs = apply_template(templ, {interpret(left, interp), mixture,
                                            interpret(right, interp)});
    MultiDist<Term> plugged;
    for (const auto& branch : dist.branches) {
      plugged.branches.push_back({branch.prob, Term::app(f3, {left, branch.value, right})});
    }
    Polynomial rhs = expected_poly(plugged, interp);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("check_direct accepts the worked certificates") {
  // random walk: g |-> x+1, O |-> 0
  Ptrs rw = load_corpus("rw");
  DirectCheck rw_check = check_direct(rw, rw_interp());
  CHECK(rw_check.ok);
  CHECK(rw_check.rules[0].strict_branch == 0);

  // incompleteness example: f |-> x+2, g |-> 4, b |-> 3, stop |-> 0
  Ptrs incompl = load_corpus("incompl");
  PolyInterp cert;
  cert.set("f", linear(2, {{"x1", 1}}));
  cert.set("g", Polynomial::constant(4));
  cert.set("b", Polynomial::constant(3));
  cert.set("stop", Polynomial::constant(0));
  CHECK(check_direct(incompl, cert).ok);
}

TEST_CASE("check_direct rejects and reports failures") {
  Ptrs div = load_corpus("div");
  DirectCheck check = check_direct(div, div_interp());
  CHECK(!check.ok);
  // the recursive div rule admits no strictly decreasing branch under the
  // projection certificate
  REQUIRE(check.rules.size() == 4);
  CHECK(!check.rules[3].strict_ok);
  CHECK(check.to_string().find("rule 4") != std::string::npos);

  // non-monotone interpretation flagged
  Ptrs rw = load_corpus("rw");
  PolyInterp flat;
  flat.set("g", Polynomial::constant(1));
  flat.set("O", Polynomial::constant(0));
  DirectCheck mono = check_direct(rw, flat);
  CHECK(!mono.ok);
  CHECK(!mono.monotone);
}

TEST_CASE("check_rpp accepts the division certificate on both components") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  auto subs = dg_processor(prob);
  REQUIRE(subs.size() == 2);

  RppCheck first = check_rpp(subs[0], div_interp(), {0});
  CHECK(first.ok);
  CHECK(first.pairs[0].strict_branch == 0);

  RppCheck second = check_rpp(subs[1], div_interp(), {0});
  CHECK(second.ok);
  CHECK(second.pairs[0].strict_branch == 1);  // strict branch j = 2
  CHECK(second.pairs[0].coupled_in_system);
}

TEST_CASE("check_rpp conditions") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  auto subs = dg_processor(prob);

  // empty strict set violates the precondition
  CHECK_THROWS_AS(check_rpp(subs[0], div_interp(), {}), std::invalid_argument);

  // negative coefficients violate the carrier
  PolyInterp bad = div_interp();
  bad.set("O", Polynomial::constant(-1));
  CHECK_THROWS_AS(check_rpp(subs[0], bad, {0}), std::invalid_argument);

  // an interpretation that breaks the weak system condition is rejected
  PolyInterp weak_bad = div_interp();
  weak_bad.set("minus", linear(0, {{"x1", 1}, {"x2", 1}}));  // minus |-> x1+x2
  RppCheck check = check_rpp(subs[0], weak_bad, {0});
  CHECK(!check.ok);
}

TEST_CASE("eligible_strict finds the maximal strict set") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  auto subs = dg_processor(prob);
  CHECK(eligible_strict(subs[0], div_interp()) == std::vector<int>{0});
  CHECK(eligible_strict(subs[1], div_interp()) == std::vector<int>{0});
  // under the all-zero interpretation nothing decreases strictly
  PolyInterp zero;
  for (const char* sym : {"O", "s", "minus", "div", "M", "D"}) {
    zero.set(sym, Polynomial::constant(0));
  }
  CHECK(eligible_strict(subs[0], zero).empty());
}

TEST_CASE("polynomial printing") {
  CHECK(to_string(linear(1, {{"x1", 1}})) == "x1 + 1");
  CHECK(to_string(linear(1, {{"x1", 2}})) == "2*x1 + 1");
  CHECK(to_string(Polynomial::constant(0)) == "0");
  CHECK(to_string(Polynomial::constant(Rat(5, 8))) == "5/8");
  Polynomial cross;
  cross.set({"x1", "x2"}, Rat(3));
  cross += Polynomial::variable("x1");
  CHECK(to_string(cross) == "3*x1*x2 + x1");
}
