#pragma once

#include "dp.hpp"
#include "polynomial.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace probterm {

/// Polynomial in the unknown template coefficients (arbitrary exponents,
/// exact rational coefficients). Unknowns are identified by dense indices.
class UPoly {
 public:
  using Mono = std::vector<std::pair<int, int>>;  // sorted (unknown, exponent)

  static UPoly constant(Rat value);
  static UPoly unknown(int id);

  UPoly& operator+=(const UPoly& other);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Rat& factor) const;

  const std::map<Mono, Rat>& monomials() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::map<Mono, Rat> coeffs_;
};

/// Polynomial in the rule variables whose coefficients are UPoly expressions
/// over the unknown template coefficients. Multilinear in the rule
/// variables; products that would square a rule variable throw.
class SymPoly {
 public:
  static SymPoly variable(const std::string& name);
  static SymPoly from_upoly(UPoly u);

  SymPoly& operator+=(const SymPoly& other);
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly scaled(const Rat& factor) const;
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b);

  const std::map<Monomial, UPoly>& monomials() const { return coeffs_; }

 private:
  std::map<Monomial, UPoly> coeffs_;
};

/// One unknown of a symbol template: the coefficient of the given argument
/// monomial (sorted 1-based argument indices; empty = constant).
struct TemplateUnknown {
  int id;
  std::string symbol;
  std::vector<int> arg_monomial;
  int lower_bound;  // 1 for argument coefficients under strict monotonicity
};

struct SymbolTemplate {
  Symbol sym;
  std::vector<int> unknown_ids;  // in arg-monomial order: constant, x1, x2, ...
};

/// diff >= 0 must hold coefficient-wise.
struct WeakConstraint {
  SymPoly diff;
  std::string origin;
};

/// One admissible branch of a strict constraint: the strict difference must
/// be absolutely positive, and the side difference (the coupled-rule
/// condition, when present) absolutely nonnegative.
struct StrictAlternative {
  SymPoly strict_diff;
  std::optional<SymPoly> side_diff;
};

/// Some alternative must hold.
struct StrictConstraint {
  std::vector<StrictAlternative> alternatives;
  std::string origin;
};

/// Symbolic encoding of the template search problem. `strict_required` must
/// all hold; of `strict_optional` (the per-pair strictly-decreasing
/// conditions of the reduction pair processor) at least one must hold, and
/// the satisfied set becomes P_>.
struct ConstraintSet {
  std::vector<TemplateUnknown> unknowns;
  std::vector<SymbolTemplate> templates;  // sorted by symbol name
  std::vector<WeakConstraint> weak;
  std::vector<StrictConstraint> strict_required;
  std::vector<StrictConstraint> strict_optional;  // index = pair index
  // Coefficients that must vanish so composed interpretations stay
  // multilinear (only populated by full multilinear templates).
  std::vector<UPoly> must_be_zero;
};

struct TemplateOptions {
  bool full_multilinear = false;  // cross monomials for arities <= 3
};

/// Constraints of the direct criterion (strict monotonicity is encoded as a
/// lower bound of 1 on argument coefficients).
ConstraintSet direct_constraints(const Ptrs& r, const TemplateOptions& opts = {});

/// Constraints of the reduction pair processor for (P, S).
ConstraintSet rpp_constraints(const DpProblem& prob, const TemplateOptions& opts = {});

/// SMT-LIB 2 script over nonlinear integer arithmetic whose models are
/// exactly the valid template instantiations.
std::string export_smtlib(const ConstraintSet& cs);

struct SearchBudget {
  int max_coeff = 4;
  bool full_multilinear = false;
  std::uint64_t max_nodes = 5'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class SearchStatus {
  Found,      // witness found
  Absent,     // template space fully enumerated, no witness
  Exhausted,  // node budget or deadline hit before full enumeration
};

std::string to_string(SearchStatus s);

struct DirectSynthesis {
  SearchStatus status = SearchStatus::Absent;
  std::optional<PolyInterp> interp;
  std::uint64_t nodes = 0;
};

struct RppSynthesis {
  SearchStatus status = SearchStatus::Absent;
  std::optional<PolyInterp> interp;
  std::vector<int> strict;  // maximal P_> under the found interpretation
  std::uint64_t nodes = 0;
};

/// Iterative-deepening exhaustive search for a direct-criterion witness.
/// Deterministic: the first candidate in enumeration order wins.
DirectSynthesis synthesize_direct(const Ptrs& r, const SearchBudget& budget);

/// Search for a reduction-pair witness; throws std::invalid_argument when
/// the problem has no pairs.
RppSynthesis synthesize_rpp(const DpProblem& prob, const SearchBudget& budget);

}  // namespace probterm
