#include "depgraph.hpp"

#include <algorithm>
#include <sstream>

namespace probterm {

bool operator==(const DepGraph& a, const DepGraph& b) {
  return a.node_count == b.node_count && a.edges == b.edges;
}

namespace {

Term cap_ren_below(const Term& t, int& counter) {
  if (t.is_var() || t.root().kind == SymbolKind::Defined) {
    return Term::var("z" + std::to_string(counter++));
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(cap_ren_below(c, counter));
  return Term::app(t.root(), std::move(args));
}

Term rename_apart(const Term& t, int& counter,
                  std::map<std::string, std::string>& seen) {
  if (t.is_var()) {
    auto it = seen.find(t.var_name());
    if (it == seen.end()) {
      it = seen.emplace(t.var_name(), "w" + std::to_string(counter++)).first;
    }
    return Term::var(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(rename_apart(c, counter, seen));
  return Term::app(t.root(), std::move(args));
}

}  // namespace

Term cap_ren(const Term& tuple_rooted) {
  if (tuple_rooted.is_var() || tuple_rooted.root().kind != SymbolKind::Tuple) {
    throw std::invalid_argument("cap_ren: root of " + to_string(tuple_rooted) +
                                " is not a tuple symbol");
  }
  int counter = 1;
  std::vector<Term> args;
  args.reserve(tuple_rooted.args().size());
  for (const Term& c : tuple_rooted.args()) args.push_back(cap_ren_below(c, counter));
  return Term::app(tuple_rooted.root(), std::move(args));
}

bool has_edge(const CoupledDt& from, const CoupledDt& to, const Ptrs& s,
              bool nf_filter) {
  int counter = 1;
  std::map<std::string, std::string> seen;
  Term target = rename_apart(to.lhs_sharp, counter, seen);
  for (const auto& branch : from.branches) {
    for (const Term& arg : branch.dp.args()) {
      if (arg.is_var() || arg.root().kind != SymbolKind::Tuple) continue;
      Term capped = cap_ren(arg);
      auto mgu = unify(capped, target);
      if (!mgu) continue;
      if (nf_filter) {
        Term instance = mgu->apply(target);
        bool args_normal = true;
        for (const Term& a : instance.args()) {
          if (!is_normal_form(a, s)) {
            args_normal = false;
            break;
          }
        }
        if (!args_normal) continue;
      }
      return true;
    }
  }
  return false;
}

DepGraph build_graph(const DpProblem& prob, bool nf_filter) {
  DepGraph g;
  g.node_count = static_cast<int>(prob.pairs.size());
  for (int i = 0; i < g.node_count; ++i) {
    for (int j = 0; j < g.node_count; ++j) {
      if (has_edge(prob.pairs[i], prob.pairs[j], prob.system, nf_filter)) {
        g.edges.insert({i, j});
      }
    }
  }
  return g;
}

namespace {

// Tarjan over the (small) graphs we build; recursion depth is bounded by the
// number of dependency tuples.
struct TarjanState {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, lowlink, stack;
  std::vector<bool> on_stack;
  int next_index = 0;
  std::vector<std::vector<int>> components;

  explicit TarjanState(const std::vector<std::vector<int>>& adj)
      : adj(adj),
        index(adj.size(), -1),
        lowlink(adj.size(), 0),
        on_stack(adj.size(), false) {}

  void visit(int v) {
    index[v] = lowlink[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] == -1) {
        visit(w);
        lowlink[v] = std::min(lowlink[v], lowlink[w]);
      } else if (on_stack[w]) {
        lowlink[v] = std::min(lowlink[v], index[w]);
      }
    }
    if (lowlink[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  }
};

}  // namespace

std::vector<std::vector<int>> sccs(const DepGraph& g) {
  std::vector<std::vector<int>> adj(g.node_count);
  for (const auto& [from, to] : g.edges) adj[from].push_back(to);

  TarjanState state(adj);
  for (int v = 0; v < g.node_count; ++v) {
    if (state.index[v] == -1) state.visit(v);
  }

  std::vector<std::vector<int>> result;
  for (auto& comp : state.components) {
    bool cyclic = comp.size() > 1 || g.has(comp[0], comp[0]);
    if (cyclic) result.push_back(std::move(comp));
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

std::vector<DpProblem> dg_processor(const DpProblem& prob, bool nf_filter) {
  DepGraph g = build_graph(prob, nf_filter);
  std::vector<DpProblem> out;
  for (const auto& comp : sccs(g)) out.push_back(prob.restricted_to(comp));
  return out;
}

std::string graph_lines(const DepGraph& g) {
  std::ostringstream out;
  for (const auto& [from, to] : g.edges) {
    out << (from + 1) << " -> " << (to + 1) << "\n";
  }
  return out.str();
}

std::string graph_dot(const DepGraph& g, const DpProblem& prob) {
  std::ostringstream out;
  out << "digraph depgraph {\n";
  for (int i = 0; i < g.node_count; ++i) {
    out << "  n" << (i + 1) << " [label=\"(" << (i + 1) << ") "
        << to_string(prob.pairs[i].lhs_sharp) << "\"];\n";
  }
  for (const auto& [from, to] : g.edges) {
    out << "  n" << (from + 1) << " -> n" << (to + 1) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace probterm
