#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace probterm {

enum class SymbolKind { Defined, Constructor, Tuple, Compound };

/// A function symbol. Identity is (name, arity); the kind records which part
/// of the signature the symbol belongs to and never participates in equality.
struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Constructor;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.arity == b.arity;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

/// Immutable first-order term: a variable or an application of a Symbol to
/// arity-many arguments. Copies share structure; nothing is ever mutated.
class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term app(Symbol sym, std::vector<Term> args = {});

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  const std::string& var_name() const;
  const Symbol& root() const;
  const std::vector<Term>& args() const;

  /// Number of nodes (variables and applications) in the term.
  int size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    bool is_var = false;
    std::string name;  // variable name when is_var
    Symbol sym;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Path to a subterm: a sequence of 1-based argument indices, empty = root.
using Position = std::vector<int>;

struct InvalidPosition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  void bind(const std::string& var, Term t) { map_[var] = std::move(t); }
  const Term* lookup(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) > 0; }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& entries() const { return map_; }

  /// Applies the substitution simultaneously (unbound variables stay).
  Term apply(const Term& t) const;

 private:
  std::map<std::string, Term> map_;
};

Term subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);

/// Syntactic matching: a substitution s with pattern*s == subject, if any.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Most general unifier with occurs check. The result is idempotent.
std::optional<Substitution> unify(const Term& s, const Term& t);

/// Total order on positions: shorter (outer) before longer (inner),
/// lexicographic tie-break.
std::strong_ordering position_compare(const Position& a, const Position& b);

/// Canonical total order on terms: variables before applications, variables
/// by name, applications by root name, then arity, then children.
std::strong_ordering term_compare(const Term& a, const Term& b);

/// Variable names in order of first occurrence (left-to-right, depth-first).
std::vector<std::string> collect_vars(const Term& t);

/// All positions of t in depth-first order, root first.
std::vector<Position> all_positions(const Term& t);

std::string to_string(const Term& t);
std::string to_string(const Position& pos);

}  // namespace probterm
