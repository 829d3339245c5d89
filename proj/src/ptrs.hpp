#pragma once

#include "rational.hpp"
#include "term.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace probterm {

/// Finite multiset of (probability, payload) pairs. A well-formed
/// distribution has 0 < p <= 1 for each entry and total mass exactly 1;
/// validate() reports violations, construction does not enforce them.
template <typename T>
struct MultiDist {
  struct Branch {
    Rat prob;
    T value;
  };
  std::vector<Branch> branches;

  Rat total() const {
    Rat sum = 0;
    for (const auto& b : branches) sum += b.prob;
    return sum;
  }
  std::size_t size() const { return branches.size(); }
};

struct ProbRule {
  Term lhs;
  MultiDist<Term> rhs;
};

struct NpRule {
  Term lhs;
  Term rhs;

  friend bool operator==(const NpRule& a, const NpRule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Function symbols by name plus the set of declared variable names.
/// Defined symbols are the root symbols of rule left-hand sides; everything
/// else is a constructor. Tuple and compound symbols are added later by the
/// dependency-tuple construction.
class Signature {
 public:
  const Symbol* find(const std::string& name) const;
  void add(const Symbol& sym);  // keeps the first kind, checks arity
  bool is_variable(const std::string& name) const { return vars_.count(name) > 0; }
  void add_variable(const std::string& name) { vars_.insert(name); }

  const std::map<std::string, Symbol>& symbols() const { return symbols_; }
  const std::set<std::string>& variables() const { return vars_; }
  std::vector<Symbol> with_kind(SymbolKind kind) const;

 private:
  std::map<std::string, Symbol> symbols_;
  std::set<std::string> vars_;
};

struct Ptrs {
  Signature signature;
  std::vector<ProbRule> rules;
};

bool operator==(const Ptrs& a, const Ptrs& b);
bool operator==(const ProbRule& a, const ProbRule& b);

struct Diagnostic {
  int rule_index = -1;  // -1: not tied to a rule
  std::string message;
};

/// Empty iff every rule has a non-variable lhs, rhs variables contained in
/// the lhs, branch probabilities in (0, 1], and total mass exactly 1.
std::vector<Diagnostic> validate(const Ptrs& r);

/// True iff no subterm of t matches any rule lhs.
bool is_normal_form(const Term& t, const Ptrs& r);

/// Allocation-free matching test (no substitution is built).
bool matches(const Term& pattern, const Term& subject);

struct Redex {
  Position pos;
  int rule_index;
};

/// All (position, rule) pairs where the rule lhs matches and every proper
/// subterm of the redex is a normal form.
std::vector<Redex> innermost_redexes(const Term& t, const Ptrs& r);

struct NotARedex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One probabilistic rewrite step at an innermost redex; throws NotARedex if
/// (pos, rule_index) is not an innermost redex of t.
MultiDist<Term> rewrite_innermost(const Term& t, const Position& pos,
                                  int rule_index, const Ptrs& r);

/// Non-probabilistic variant: one plain rule per branch, duplicates removed
/// (after the canonical renaming applied on ingestion).
std::vector<NpRule> np_variant(const Ptrs& r);

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
};

/// Parses the s-expression rule format:
///   file     := decl*
///   decl     := "(VAR" ident* ")" | "(RULES" prule* ")"
///   prule    := term "->" "{" branch ("," branch)* "}"
///   branch   := rational ":" term
///   rational := integer ("/" positive-integer)?
///   term     := ident | ident "(" term ("," term)* ")"
/// Identifiers match [A-Za-z_][A-Za-z0-9_']*; "%" starts a line comment.
/// Decimal probabilities are rejected. Rule variables are canonically
/// renamed to x1, x2, ... by first occurrence in the lhs.
Ptrs parse_ptrs(const std::string& text);

std::string serialize(const Ptrs& r);
std::string to_string(const ProbRule& rule);

/// Parses a single term against an existing system's signature. Identifiers
/// declared as variables stay variables; unknown identifiers become fresh
/// constructor symbols (so start terms may use constants absent from the
/// rules, e.g. a zero constant for a unary counting symbol).
Term parse_term(const std::string& text, const Ptrs& context);

/// Renames each rule's variables to x1, x2, ... in order of first occurrence
/// in the lhs (rhs-only variables, which validation rejects, get y1, y2, ...).
ProbRule canonical_rename(const ProbRule& rule);

}  // namespace probterm
