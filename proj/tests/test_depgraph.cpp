#include "depgraph.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace probterm;
using probterm::testing::load_corpus;

namespace {

// 1-based edge set for readable comparisons against the worked examples.
std::set<std::pair<int, int>> edges_1based(const DepGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const auto& [from, to] : g.edges) out.insert({from + 1, to + 1});
  return out;
}

}  // namespace

TEST_CASE("cap_ren replaces defined subterms and renames variables") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);

  // D(minus(x,y), s(y)) -> D(z1, s(z2))
  Term d = prob.pairs[3].branches[1].dp;  // Com_2(D(minus(x,y),s(y)), M(x,y))
  Term d_arg;
  for (const Term& arg : d.args()) {
    if (arg.root().name == "D") d_arg = arg;
  }
  Term capped = cap_ren(d_arg);
  CHECK(capped.args()[0] == Term::var("z1"));
  CHECK(capped.args()[1].root().name == "s");
  CHECK(capped.args()[1].args()[0] == Term::var("z2"));

  // only variables renamed when nothing is defined below
  Term m = prob.pairs[1].branches[0].dp.args()[0];  // M(x, y)
  Term m_capped = cap_ren(m);
  CHECK(m_capped.args()[0] == Term::var("z1"));
  CHECK(m_capped.args()[1] == Term::var("z2"));

  // a defined constant below a tuple symbol is wiped
  Ptrs incompl = load_corpus("incompl");
  DpProblem ip = dependency_tuples(incompl);
  Term fg;  // F(g) inside Com_2(F(g), G)
  for (const Term& arg : ip.pairs[0].branches[0].dp.args()) {
    if (arg.root().arity == 1) fg = arg;
  }
  Term fg_capped = cap_ren(fg);
  CHECK(fg_capped.args()[0] == Term::var("z1"));

  CHECK_THROWS_AS(cap_ren(parse_term("g(O)", load_corpus("rw"))), std::invalid_argument);
}

TEST_CASE("has_edge on the division tuples") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  const auto& p = prob.pairs;

  CHECK(has_edge(p[3], p[1], div));   // (4) -> (2): M(x,y) reaches M(s(x),s(y))
  CHECK(has_edge(p[1], p[1], div));   // (2) self-loop
  CHECK(has_edge(p[3], p[3], div));   // (4) self-loop
  CHECK(!has_edge(p[0], p[0], div));  // (1) has no tuple argument at all
  CHECK(!has_edge(p[0], p[1], div));
  CHECK(!has_edge(p[0], p[3], div));
  CHECK(!has_edge(p[2], p[3], div));  // (3) rewrites to Com_0 only
}

TEST_CASE("dependency graph of the division system matches the worked example") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  DepGraph g = build_graph(prob);
  CHECK(edges_1based(g) == std::set<std::pair<int, int>>{
                               {2, 2}, {2, 1}, {4, 4}, {4, 3}, {4, 2}, {4, 1}});

  auto comps = sccs(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{1});  // tuple (2), 0-based index 1
  CHECK(comps[1] == std::vector<int>{3});  // tuple (4), 0-based index 3

  auto subproblems = dg_processor(prob);
  REQUIRE(subproblems.size() == 2);
  CHECK(subproblems[0].pairs.size() == 1);
  CHECK(subproblems[0].pairs[0] == prob.pairs[1]);
  CHECK(subproblems[1].pairs[0] == prob.pairs[3]);
  CHECK(subproblems[0].system == div);
}

TEST_CASE("empty problem yields an empty graph and no sub-problems") {
  Ptrs div = load_corpus("div");
  DpProblem empty;
  empty.system = div;
  DepGraph g = build_graph(empty);
  CHECK(g.node_count == 0);
  CHECK(g.edges.empty());
  CHECK(sccs(g).empty());
  CHECK(dg_processor(empty).empty());
}

TEST_CASE("random walk graph is a single self-loop") {
  Ptrs rw = load_corpus("rw");
  DpProblem prob = dependency_tuples(rw);
  DepGraph g = build_graph(prob);
  CHECK(edges_1based(g) == std::set<std::pair<int, int>>{{1, 1}});
  auto comps = sccs(g);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0});
}

TEST_CASE("sccs on hand-built graphs") {
  DepGraph acyclic;
  acyclic.node_count = 3;
  acyclic.edges = {{0, 1}, {1, 2}};
  CHECK(sccs(acyclic).empty());  // no cycles at all

  DepGraph mutual;
  mutual.node_count = 2;
  mutual.edges = {{0, 1}, {1, 0}};
  auto comps = sccs(mutual);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0, 1});

  // edges within a component stay within it, and cyclic nodes are partitioned
  DepGraph mixed;
  mixed.node_count = 5;
  mixed.edges = {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 3}, {3, 4}};
  auto mixed_comps = sccs(mixed);
  REQUIRE(mixed_comps.size() == 2);
  CHECK(mixed_comps[0] == std::vector<int>{0, 1});
  CHECK(mixed_comps[1] == std::vector<int>{3});
  for (const auto& comp : mixed_comps) {
    for (int a : comp) {
      for (int b : comp) {
        // reachability inside the component uses only component nodes (spot
        // check through direct edges)
        if (mixed.has(a, b)) CHECK(true);
      }
    }
  }
}

TEST_CASE("incompleteness example: one SCC with the first and third tuple") {
  Ptrs incompl = load_corpus("incompl");
  DpProblem prob = dependency_tuples(incompl);
  REQUIRE(prob.pairs.size() == 3);
  DepGraph g = build_graph(prob);
  CHECK(g.has(0, 2));  // F(g) reaches F(b)
  CHECK(g.has(0, 0));  // G reaches G
  CHECK(g.has(2, 0));
  auto comps = sccs(g);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0, 2});

  auto subs = dg_processor(prob);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].pairs.size() == 2);
}

TEST_CASE("even/odd tuples form one two-node SCC") {
  Ptrs eo = load_corpus("even_odd");
  DpProblem prob = dependency_tuples(eo);  // 4 rules -> 4 tuples
  auto comps = sccs(build_graph(prob));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{1, 3});  // the two s-rules
}

TEST_CASE("dg_processor result is empty iff the graph is acyclic") {
  for (const char* name : {"coin", "dice"}) {
    Ptrs r = load_corpus(name);
    DpProblem prob = dependency_tuples(r);
    CHECK(build_graph(prob).edges.empty());
    CHECK(dg_processor(prob).empty());
  }
}

namespace {

// Ground constructor instantiations of the variables of t, depth-bounded.
std::vector<Substitution> ground_instances(const Term& t, const Ptrs& system) {
  std::vector<Term> pool;
  std::vector<Symbol> constants, unaries;
  for (const auto& [name, sym] : system.signature.symbols()) {
    if (sym.kind != SymbolKind::Constructor) continue;
    if (sym.arity == 0) constants.push_back(sym);
    if (sym.arity == 1) unaries.push_back(sym);
  }
  if (constants.empty()) constants.push_back(Symbol{"c0", 0, SymbolKind::Constructor});
  for (const Symbol& c : constants) pool.push_back(Term::app(c));
  std::vector<Term> depth1 = pool;
  for (const Symbol& u : unaries) {
    for (const Term& base : depth1) pool.push_back(Term::app(u, {base}));
  }
  std::vector<Term> depth2 = pool;
  for (const Symbol& u : unaries) {
    for (const Term& base : depth2) {
      Term t2 = Term::app(u, {base});
      if (std::find(pool.begin(), pool.end(), t2) == pool.end()) pool.push_back(t2);
    }
  }

  std::vector<std::string> vars = collect_vars(t);
  std::vector<Substitution> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= pool.size();
  for (std::size_t code = 0; code < total; ++code) {
    Substitution sub;
    std::size_t rest = code;
    for (const std::string& v : vars) {
      sub.bind(v, pool[rest % pool.size()]);
      rest /= pool.size();
    }
    out.push_back(std::move(sub));
  }
  return out;
}

// All terms reachable from t by at most `depth` innermost np(S) steps.
std::vector<Term> np_reachable(const Term& t, const Ptrs& system, int depth) {
  std::vector<NpRule> np = np_variant(system);
  std::vector<Term> frontier{t}, all{t};
  for (int d = 0; d < depth; ++d) {
    std::vector<Term> next;
    for (const Term& cur : frontier) {
      for (const Redex& redex : innermost_redexes(cur, system)) {
        // innermost_redexes uses the probabilistic rules; unfold each branch
        const ProbRule& rule = system.rules[redex.rule_index];
        auto sigma = match(rule.lhs, subterm_at(cur, redex.pos));
        for (const auto& branch : rule.rhs.branches) {
          Term stepped = replace_at(cur, redex.pos, sigma->apply(branch.value));
          if (std::find(all.begin(), all.end(), stepped) == all.end()) {
            all.push_back(stepped);
            next.push_back(stepped);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("edge estimation over-approximates concrete reachability") {
  // For every pair of tuples where an instantiated sharped subterm rewrites
  // to an instantiated target lhs within 3 innermost steps (both lhs
  // instances normal forms), has_edge must be true.
  for (const char* name : {"div", "incompl", "rw", "r1"}) {
    Ptrs system = load_corpus(name);
    DpProblem prob = dependency_tuples(system);
    for (const CoupledDt& from : prob.pairs) {
      for (const CoupledDt& to : prob.pairs) {
        bool concrete = false;
        for (const auto& branch : from.branches) {
          for (const Term& sharp_arg : branch.dp.args()) {
            if (sharp_arg.is_var() || sharp_arg.root().kind != SymbolKind::Tuple) continue;
            for (const Substitution& sigma1 : ground_instances(sharp_arg, system)) {
              if (!is_normal_form(sigma1.apply(from.lhs_sharp), system)) continue;
              for (const Term& reached : np_reachable(sigma1.apply(sharp_arg), system, 3)) {
                auto sigma2 = match(to.lhs_sharp, reached);
                if (sigma2 && is_normal_form(reached, system)) {
                  concrete = true;
                  break;
                }
              }
              if (concrete) break;
            }
            if (concrete) break;
          }
          if (concrete) break;
        }
        if (concrete) {
          CHECK_MESSAGE(has_edge(from, to, system),
                        "missing edge for ", to_string(from.lhs_sharp), " -> ",
                        to_string(to.lhs_sharp), " in ", name);
        }
      }
    }
  }
}

TEST_CASE("graph dumps") {
  Ptrs div = load_corpus("div");
  DpProblem prob = dependency_tuples(div);
  DepGraph g = build_graph(prob);
  std::string lines = graph_lines(g);
  CHECK(lines.find("2 -> 1\n") != std::string::npos);
  CHECK(lines.find("4 -> 4\n") != std::string::npos);
  std::string dot = graph_dot(g, prob);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("n4 -> n1;") != std::string::npos);
}
