#pragma once

#include "ptrs.hpp"

#include <map>
#include <string>
#include <vector>

namespace probterm {

/// Compound constructor Com_n grouping n marked subterms.
Symbol compound_symbol(int arity);
bool is_compound(const Symbol& sym);

/// Tuple-symbol naming for the defined symbols of a signature. A defined
/// symbol gets the uppercased first letter of its name (numeric tail kept,
/// so b_1 becomes B_1); when that would clash with an existing symbol or
/// with another tuple symbol, the name suffixed with "#" is used instead.
class TupleNames {
 public:
  explicit TupleNames(const Signature& sig);

  const Symbol& tuple_symbol(const std::string& defined_name) const;

  /// Root replaced by the corresponding tuple symbol; the root must be defined.
  Term sharp(const Term& t) const;

 private:
  std::map<std::string, Symbol> by_defined_;
};

/// Com_n over the sharped defined-rooted subterm occurrences of t, ordered
/// outermost-first by position (duplicates kept; not normalized).
Term dp_transform(const Term& t, const TupleNames& names);

/// Flattens nested compound symbols and sorts the arguments by the canonical
/// term order; identity on the argument multiset, idempotent.
Term normalize_compound(const Term& t);

struct CoupledDt {
  Term lhs_sharp;
  Term lhs_orig;
  struct Branch {
    Rat prob;
    Term dp;   // normalized compound term
    Term rhs;  // the originating rule's branch term
  };
  std::vector<Branch> branches;

  ProbRule coupled_rule() const;
};

bool operator==(const CoupledDt& a, const CoupledDt& b);
std::string to_string(const CoupledDt& dt);

/// A DP problem (P, S): dependency tuples plus the rewrite system.
struct DpProblem {
  std::vector<CoupledDt> pairs;
  Ptrs system;

  DpProblem restricted_to(const std::vector<int>& indices) const;
  DpProblem without(const std::vector<int>& indices) const;
};

bool operator==(const DpProblem& a, const DpProblem& b);

/// The chain-criterion entry point: one coupled dependency tuple per rule,
/// paired with the unchanged system.
DpProblem dependency_tuples(const Ptrs& r);

/// Every symbol occurring in the pairs or rules of the problem, by name.
std::map<std::string, Symbol> collect_symbols(const DpProblem& prob);
std::map<std::string, Symbol> collect_symbols(const Ptrs& r);

}  // namespace probterm
