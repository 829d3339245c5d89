#pragma once

#include "dp.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace probterm {

struct DepGraph {
  int node_count = 0;
  std::set<std::pair<int, int>> edges;

  bool has(int from, int to) const { return edges.count({from, to}) > 0; }
};

bool operator==(const DepGraph& a, const DepGraph& b);

/// Cap-and-rename over-approximation: every proper subterm with a defined
/// root becomes a distinct fresh variable, and every remaining variable
/// occurrence is renamed fresh (z1, z2, ... in depth-first order).
Term cap_ren(const Term& tuple_rooted);

/// Edge estimation for the (P, S)-dependency graph: some tuple-rooted
/// argument of a d_j of `from`, after cap_ren, unifies with a renamed copy
/// of `to`'s sharped lhs. With nf_filter, unified instances of the target
/// lhs must additionally be normal forms w.r.t. S.
bool has_edge(const CoupledDt& from, const CoupledDt& to, const Ptrs& s,
              bool nf_filter = false);

DepGraph build_graph(const DpProblem& prob, bool nf_filter = false);

/// Strongly connected components that contain at least one edge (singletons
/// without a self-loop are dropped), ordered by smallest contained index.
std::vector<std::vector<int>> sccs(const DepGraph& g);

/// One sub-problem per SCC, each paired with the unchanged system.
std::vector<DpProblem> dg_processor(const DpProblem& prob, bool nf_filter = false);

/// "i -> j" per edge, 1-based, one per line.
std::string graph_lines(const DepGraph& g);
std::string graph_dot(const DepGraph& g, const DpProblem& prob);

}  // namespace probterm
