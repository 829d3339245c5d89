#include "polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace probterm {

Polynomial Polynomial::constant(Rat value) {
  Polynomial p;
  if (value != 0) p.coeffs_[{}] = std::move(value);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.coeffs_[{name}] = 1;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [mono, c] : other.coeffs_) {
    Rat& slot = coeffs_[mono];
    slot += c;
    if (slot == 0) coeffs_.erase(mono);
  }
  return *this;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  out += b.scaled(-1);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.coeffs_) {
    for (const auto& [mb, cb] : b.coeffs_) {
      Monomial merged;
      merged.reserve(ma.size() + mb.size());
      std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(),
                     std::back_inserter(merged));
      if (merged.size() != ma.size() + mb.size()) {
        throw NonMultilinear("product would square a variable");
      }
      Rat& slot = out.coeffs_[merged];
      slot += ca * cb;
      if (slot == 0) out.coeffs_.erase(merged);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const Rat& factor) const {
  Polynomial out;
  if (factor == 0) return out;
  for (const auto& [mono, c] : coeffs_) out.coeffs_[mono] = c * factor;
  return out;
}

Rat Polynomial::coeff(const Monomial& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat Polynomial::eval(const std::map<std::string, Rat>& point) const {
  Rat total = 0;
  for (const auto& [mono, c] : coeffs_) {
    Rat value = c;
    for (const std::string& var : mono) {
      auto it = point.find(var);
      value *= (it == point.end()) ? Rat(0) : it->second;
    }
    total += value;
  }
  return total;
}

void Polynomial::set(Monomial m, Rat c) {
  std::sort(m.begin(), m.end());
  if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
    throw NonMultilinear("monomial repeats a variable");
  }
  if (c == 0) {
    coeffs_.erase(m);
  } else {
    coeffs_[std::move(m)] = std::move(c);
  }
}

std::string to_string(const Polynomial& p) {
  if (p.monomials().empty()) return "0";
  // Higher-degree monomials first, then lexicographic.
  std::vector<std::pair<Monomial, Rat>> items(p.monomials().begin(), p.monomials().end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [mono, c] = items[i];
    if (i > 0) s += " + ";
    if (mono.empty()) {
      s += rat_to_string(c);
      continue;
    }
    if (c != 1) s += rat_to_string(c) + "*";
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (k > 0) s += "*";
      s += mono[k];
    }
  }
  return s;
}

const Polynomial* PolyInterp::find(const std::string& symbol) const {
  auto it = map_.find(symbol);
  return it == map_.end() ? nullptr : &it->second;
}

bool PolyInterp::nonnegative() const {
  for (const auto& [sym, poly] : map_) {
    for (const auto& [mono, c] : poly.monomials()) {
      if (c < 0) return false;
    }
  }
  return true;
}

std::string formal_var(int i) { return "x" + std::to_string(i); }

Polynomial apply_template(const Polynomial& templ, const std::vector<Polynomial>& args) {
  Polynomial out;
  for (const auto& [mono, c] : templ.monomials()) {
    Polynomial product = Polynomial::constant(c);
    for (const std::string& var : mono) {
      if (var.empty() || var[0] != 'x') {
        throw std::invalid_argument("template uses non-formal variable " + var);
      }
      int index = std::stoi(var.substr(1));
      if (index < 1 || index > static_cast<int>(args.size())) {
        throw std::invalid_argument("template variable " + var + " out of range");
      }
      product = product * args[index - 1];
    }
    out += product;
  }
  return out;
}

Polynomial interpret(const Term& t, const PolyInterp& interp) {
  if (t.is_var()) return Polynomial::variable(t.var_name());
  std::vector<Polynomial> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(interpret(c, interp));
  if (is_compound(t.root())) {
    Polynomial sum;
    for (const Polynomial& a : args) sum += a;
    return sum;
  }
  const Polynomial* templ = interp.find(t.root().name);
  if (!templ) {
    throw std::invalid_argument("no interpretation for symbol " + t.root().name);
  }
  return apply_template(*templ, args);
}

Polynomial expected_poly(const MultiDist<Term>& dist, const PolyInterp& interp) {
  Polynomial sum;
  for (const auto& branch : dist.branches) {
    sum += interpret(branch.value, interp).scaled(branch.prob);
  }
  return sum;
}

bool abs_geq(const Polynomial& p, const Polynomial& q) {
  Polynomial diff = p - q;
  for (const auto& [mono, c] : diff.monomials()) {
    if (c < 0) return false;
  }
  return true;
}

bool abs_gt(const Polynomial& p, const Polynomial& q) {
  Polynomial diff = p - q;
  if (diff.constant_coeff() < 1) return false;
  for (const auto& [mono, c] : diff.monomials()) {
    if (!mono.empty() && c < 0) return false;
  }
  return true;
}

namespace {

// Strict monotonicity for multilinear polynomials over the naturals: the
// coefficient of the plain x_i monomial must be at least 1 for every
// argument (all other monomials vanish when the remaining variables are 0).
bool strictly_monotone(const Symbol& sym, const PolyInterp& interp, std::string* why) {
  const Polynomial* templ = interp.find(sym.name);
  if (!templ) {
    if (why) *why = "no interpretation for " + sym.name;
    return false;
  }
  for (int i = 1; i <= sym.arity; ++i) {
    if (templ->coeff({formal_var(i)}) < 1) {
      if (why) {
        *why = "Pol(" + sym.name + ") not strictly monotone in argument " +
               std::to_string(i);
      }
      return false;
    }
  }
  return true;
}

}  // namespace

std::string DirectCheck::to_string() const {
  std::ostringstream out;
  out << (ok ? "direct criterion satisfied" : "direct criterion violated") << "\n";
  if (!monotone) out << "  " << monotone_note << "\n";
  for (const RuleCheck& rc : rules) {
    if (rc.strict_ok && rc.weak_ok) continue;
    out << "  rule " << (rc.rule_index + 1) << ": ";
    if (!rc.strict_ok) out << "no strictly decreasing branch; ";
    if (!rc.weak_ok) out << "expected value not weakly decreasing; ";
    out << rc.note << "\n";
  }
  return out.str();
}

DirectCheck check_direct(const Ptrs& r, const PolyInterp& interp) {
  DirectCheck result;
  result.monotone = true;
  for (const auto& [name, sym] : collect_symbols(r)) {
    if (!strictly_monotone(sym, interp, &result.monotone_note)) {
      result.monotone = false;
      break;
    }
  }
  bool all_rules_ok = true;
  for (int i = 0; i < static_cast<int>(r.rules.size()); ++i) {
    const ProbRule& rule = r.rules[i];
    RuleCheck rc;
    rc.rule_index = i;
    try {
      Polynomial lhs = interpret(rule.lhs, interp);
      for (int j = 0; j < static_cast<int>(rule.rhs.size()); ++j) {
        if (abs_gt(lhs, interpret(rule.rhs.branches[j].value, interp))) {
          rc.strict_ok = true;
          rc.strict_branch = j;
          break;
        }
      }
      rc.weak_ok = abs_geq(lhs, expected_poly(rule.rhs, interp));
    } catch (const std::exception& e) {
      rc.note = e.what();
    }
    all_rules_ok = all_rules_ok && rc.strict_ok && rc.weak_ok;
    result.rules.push_back(std::move(rc));
  }
  result.ok = result.monotone && all_rules_ok;
  return result;
}

namespace {

bool rule_in_system(const ProbRule& rule, const Ptrs& system) {
  // Multiset comparison of branches; everything is canonically renamed on
  // ingestion, so syntactic equality is the right test.
  auto sorted_branches = [](const ProbRule& r) {
    std::vector<std::pair<Rat, Term>> out;
    for (const auto& b : r.rhs.branches) out.emplace_back(b.prob, b.value);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return term_compare(a.second, b.second) < 0;
    });
    return out;
  };
  auto mine = sorted_branches(rule);
  for (const ProbRule& cand : system.rules) {
    if (!(cand.lhs == rule.lhs)) continue;
    auto theirs = sorted_branches(cand);
    if (mine == theirs) return true;
  }
  return false;
}

DtCheck check_pair(const DpProblem& prob, int index, const PolyInterp& interp) {
  const CoupledDt& dt = prob.pairs[index];
  DtCheck check;
  check.pair_index = index;
  check.coupled_in_system = rule_in_system(dt.coupled_rule(), prob.system);
  try {
    Polynomial lhs_sharp = interpret(dt.lhs_sharp, interp);
    Polynomial expected_dp;
    for (const auto& branch : dt.branches) {
      expected_dp += interpret(branch.dp, interp).scaled(branch.prob);
    }
    check.weak_ok = abs_geq(lhs_sharp, expected_dp);

    Polynomial lhs_orig = interpret(dt.lhs_orig, interp);
    for (int j = 0; j < static_cast<int>(dt.branches.size()); ++j) {
      if (!abs_gt(lhs_sharp, interpret(dt.branches[j].dp, interp))) continue;
      if (check.coupled_in_system &&
          !abs_geq(lhs_orig, interpret(dt.branches[j].rhs, interp))) {
        continue;
      }
      check.strict_ok = true;
      check.strict_branch = j;
      break;
    }
  } catch (const std::exception& e) {
    check.note = e.what();
  }
  return check;
}

}  // namespace

std::string RppCheck::to_string() const {
  std::ostringstream out;
  out << (ok ? "reduction pair conditions satisfied" : "reduction pair conditions violated")
      << "\n";
  for (const RuleCheck& rc : system_rules) {
    if (!rc.weak_ok) {
      out << "  system rule " << (rc.rule_index + 1)
          << ": expected value not weakly decreasing " << rc.note << "\n";
    }
  }
  for (const DtCheck& dc : pairs) {
    if (!dc.weak_ok) {
      out << "  pair " << (dc.pair_index + 1) << ": expected dp value not weakly decreasing "
          << dc.note << "\n";
    }
  }
  return out.str();
}

RppCheck check_rpp(const DpProblem& prob, const PolyInterp& interp,
                   const std::vector<int>& strict_indices) {
  if (strict_indices.empty()) {
    throw std::invalid_argument("check_rpp: the strict subset P_> must be nonempty");
  }
  if (!interp.nonnegative()) {
    throw std::invalid_argument("check_rpp: interpretation has negative coefficients");
  }
  RppCheck result;
  bool all_ok = true;

  for (int i = 0; i < static_cast<int>(prob.system.rules.size()); ++i) {
    const ProbRule& rule = prob.system.rules[i];
    RuleCheck rc;
    rc.rule_index = i;
    try {
      rc.weak_ok = abs_geq(interpret(rule.lhs, interp), expected_poly(rule.rhs, interp));
    } catch (const std::exception& e) {
      rc.note = e.what();
    }
    all_ok = all_ok && rc.weak_ok;
    result.system_rules.push_back(std::move(rc));
  }

  for (int i = 0; i < static_cast<int>(prob.pairs.size()); ++i) {
    DtCheck dc = check_pair(prob, i, interp);
    all_ok = all_ok && dc.weak_ok;
    bool required_strict =
        std::find(strict_indices.begin(), strict_indices.end(), i) != strict_indices.end();
    if (required_strict && !dc.strict_ok) all_ok = false;
    result.pairs.push_back(std::move(dc));
  }

  result.ok = all_ok;
  return result;
}

std::vector<int> eligible_strict(const DpProblem& prob, const PolyInterp& interp) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(prob.pairs.size()); ++i) {
    if (check_pair(prob, i, interp).strict_ok) out.push_back(i);
  }
  return out;
}

}  // namespace probterm
