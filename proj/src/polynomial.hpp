#pragma once

#include "dp.hpp"
#include "ptrs.hpp"
#include "rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace probterm {

/// Monomial of a multilinear polynomial: a sorted set of variable names,
/// each with implicit exponent 1. Empty = the constant monomial.
using Monomial = std::vector<std::string>;

struct NonMultilinear : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multilinear polynomial with exact rational coefficients. Zero
/// coefficients are never stored. Multiplication throws NonMultilinear if a
/// variable would be squared.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(Rat value);
  static Polynomial variable(const std::string& name);

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rat& factor) const;

  Rat coeff(const Monomial& m) const;
  Rat constant_coeff() const { return coeff({}); }
  const std::map<Monomial, Rat>& monomials() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Exact value at a point (variables absent from the map read as 0).
  Rat eval(const std::map<std::string, Rat>& point) const;

  void set(Monomial m, Rat c);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::map<Monomial, Rat> coeffs_;
};

std::string to_string(const Polynomial& p);

/// Maps symbols to polynomials over the formal argument variables x1..xn.
/// Compound symbols are always interpreted as the sum of their arguments and
/// need no entry.
class PolyInterp {
 public:
  void set(const std::string& symbol, Polynomial p) { map_[symbol] = std::move(p); }
  const Polynomial* find(const std::string& symbol) const;
  const std::map<std::string, Polynomial>& entries() const { return map_; }

  /// All stored coefficients nonnegative (the carrier is the naturals).
  bool nonnegative() const;

 private:
  std::map<std::string, Polynomial> map_;
};

/// Formal argument variable name for position i (1-based): "x1", "x2", ...
std::string formal_var(int i);

/// Substitutes the argument polynomials into a template over x1..xn.
Polynomial apply_template(const Polynomial& templ, const std::vector<Polynomial>& args);

/// Pol(t): variables map to themselves, compound symbols to argument sums,
/// everything else through the interpretation. Throws NonMultilinear when a
/// composition squares a variable and std::invalid_argument for unmapped
/// symbols.
Polynomial interpret(const Term& t, const PolyInterp& interp);

/// Sum of p_j * Pol(r_j) over the distribution.
Polynomial expected_poly(const MultiDist<Term>& dist, const PolyInterp& interp);

/// Absolute positiveness: every coefficient of p - q is >= 0. Sufficient for
/// p >= q under all natural-number instantiations.
bool abs_geq(const Polynomial& p, const Polynomial& q);

/// Strict variant: constant coefficient of p - q at least 1, all others >= 0.
bool abs_gt(const Polynomial& p, const Polynomial& q);

struct RuleCheck {
  int rule_index = -1;
  bool strict_ok = false;   // some branch strictly decreasing
  int strict_branch = -1;   // 0-based branch index, -1 if none
  bool weak_ok = false;     // expected value weakly decreasing
  std::string note;
};

struct DirectCheck {
  bool ok = false;
  bool monotone = false;
  std::string monotone_note;
  std::vector<RuleCheck> rules;
  std::string to_string() const;
};

/// The direct criterion: strict monotonicity of the interpretation, one
/// strictly decreasing branch per rule, and a weakly decreasing expected
/// value per rule.
DirectCheck check_direct(const Ptrs& r, const PolyInterp& interp);

struct DtCheck {
  int pair_index = -1;
  bool weak_ok = false;       // condition on the expected dp-value
  bool strict_ok = false;     // eligible for the strictly decreasing part
  int strict_branch = -1;
  bool coupled_in_system = false;
  std::string note;
};

struct RppCheck {
  bool ok = false;
  std::vector<RuleCheck> system_rules;  // weak checks only
  std::vector<DtCheck> pairs;
  std::string to_string() const;
};

/// The reduction-pair conditions for (P, S) with P_> given by 0-based
/// indices into prob.pairs. Requires a nonnegative interpretation and a
/// nonempty P_>; throws std::invalid_argument otherwise.
RppCheck check_rpp(const DpProblem& prob, const PolyInterp& interp,
                   const std::vector<int>& strict_indices);

/// The maximal strict set: indices of all pairs satisfying the strictly
/// decreasing condition (with the coupled-rule side condition) under interp.
std::vector<int> eligible_strict(const DpProblem& prob, const PolyInterp& interp);

}  // namespace probterm
