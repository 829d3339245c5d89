#include "dp.hpp"

#include <algorithm>
#include <cctype>

namespace probterm {

Symbol compound_symbol(int arity) {
  return Symbol{"Com_" + std::to_string(arity), arity, SymbolKind::Compound};
}

bool is_compound(const Symbol& sym) { return sym.kind == SymbolKind::Compound; }

namespace {

std::string uppercase_candidate(const std::string& name) {
  std::size_t i = 0;
  while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) ++i;
  if (i == 0) return "";  // no letter to uppercase
  std::string stem = name.substr(0, i);
  std::string tail = name.substr(i);
  stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
  return stem.substr(0, 1) + tail;
}

void collect_symbols_in(const Term& t, std::map<std::string, Symbol>& out) {
  if (t.is_var()) return;
  if (!is_compound(t.root())) out.emplace(t.root().name, t.root());
  for (const Term& c : t.args()) collect_symbols_in(c, out);
}

}  // namespace

TupleNames::TupleNames(const Signature& sig) {
  std::vector<Symbol> defined = sig.with_kind(SymbolKind::Defined);
  std::map<std::string, int> candidate_count;
  std::map<std::string, std::string> candidates;
  for (const Symbol& sym : defined) {
    std::string cand = uppercase_candidate(sym.name);
    if (!cand.empty() && !sig.find(cand)) {
      candidates[sym.name] = cand;
      candidate_count[cand]++;
    }
  }
  for (const Symbol& sym : defined) {
    auto it = candidates.find(sym.name);
    std::string name = (it != candidates.end() && candidate_count[it->second] == 1)
                           ? it->second
                           : sym.name + "#";
    by_defined_[sym.name] = Symbol{name, sym.arity, SymbolKind::Tuple};
  }
}

const Symbol& TupleNames::tuple_symbol(const std::string& defined_name) const {
  auto it = by_defined_.find(defined_name);
  if (it == by_defined_.end()) {
    throw std::invalid_argument("no tuple symbol for " + defined_name +
                                " (not a defined symbol)");
  }
  return it->second;
}

Term TupleNames::sharp(const Term& t) const {
  if (t.is_var() || t.root().kind != SymbolKind::Defined) {
    throw std::invalid_argument("sharp: root of " + to_string(t) +
                                " is not a defined symbol");
  }
  return Term::app(tuple_symbol(t.root().name), t.args());
}

Term dp_transform(const Term& t, const TupleNames& names) {
  std::vector<Position> positions;
  for (const Position& pos : all_positions(t)) {
    Term sub = subterm_at(t, pos);
    if (sub.is_app() && sub.root().kind == SymbolKind::Defined) {
      positions.push_back(pos);
    }
  }
  std::sort(positions.begin(), positions.end(), [](const Position& a, const Position& b) {
    return position_compare(a, b) < 0;
  });
  std::vector<Term> sharped;
  sharped.reserve(positions.size());
  for (const Position& pos : positions) sharped.push_back(names.sharp(subterm_at(t, pos)));
  int count = static_cast<int>(sharped.size());
  return Term::app(compound_symbol(count), std::move(sharped));
}

namespace {
void flatten_compound(const Term& t, std::vector<Term>& out) {
  for (const Term& arg : t.args()) {
    if (arg.is_app() && is_compound(arg.root())) {
      flatten_compound(arg, out);
    } else {
      out.push_back(arg);
    }
  }
}
}  // namespace

Term normalize_compound(const Term& t) {
  if (t.is_var() || !is_compound(t.root())) {
    throw std::invalid_argument("normalize_compound: root of " + to_string(t) +
                                " is not a compound symbol");
  }
  std::vector<Term> args;
  flatten_compound(t, args);
  std::stable_sort(args.begin(), args.end(),
                   [](const Term& a, const Term& b) { return term_compare(a, b) < 0; });
  int count = static_cast<int>(args.size());
  return Term::app(compound_symbol(count), std::move(args));
}

ProbRule CoupledDt::coupled_rule() const {
  ProbRule rule;
  rule.lhs = lhs_orig;
  for (const Branch& b : branches) rule.rhs.branches.push_back({b.prob, b.rhs});
  return rule;
}

bool operator==(const CoupledDt& a, const CoupledDt& b) {
  if (!(a.lhs_sharp == b.lhs_sharp) || !(a.lhs_orig == b.lhs_orig) ||
      a.branches.size() != b.branches.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    if (a.branches[i].prob != b.branches[i].prob ||
        !(a.branches[i].dp == b.branches[i].dp) ||
        !(a.branches[i].rhs == b.branches[i].rhs)) {
      return false;
    }
  }
  return true;
}

std::string to_string(const CoupledDt& dt) {
  std::string s = "<" + to_string(dt.lhs_sharp) + ", " + to_string(dt.lhs_orig) + "> -> {";
  for (std::size_t i = 0; i < dt.branches.size(); ++i) {
    if (i > 0) s += ", ";
    s += rat_to_string(dt.branches[i].prob) + ": <" + to_string(dt.branches[i].dp) +
         ", " + to_string(dt.branches[i].rhs) + ">";
  }
  return s + "}";
}

DpProblem DpProblem::restricted_to(const std::vector<int>& indices) const {
  DpProblem out;
  out.system = system;
  for (int i : indices) out.pairs.push_back(pairs.at(i));
  return out;
}

DpProblem DpProblem::without(const std::vector<int>& indices) const {
  DpProblem out;
  out.system = system;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    if (std::find(indices.begin(), indices.end(), i) == indices.end()) {
      out.pairs.push_back(pairs[i]);
    }
  }
  return out;
}

bool operator==(const DpProblem& a, const DpProblem& b) {
  if (a.pairs.size() != b.pairs.size() || !(a.system == b.system)) return false;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    if (!(a.pairs[i] == b.pairs[i])) return false;
  }
  return true;
}

DpProblem dependency_tuples(const Ptrs& r) {
  TupleNames names(r.signature);
  DpProblem prob;
  prob.system = r;
  for (const ProbRule& rule : r.rules) {
    CoupledDt dt;
    dt.lhs_orig = rule.lhs;
    dt.lhs_sharp = names.sharp(rule.lhs);
    for (const auto& branch : rule.rhs.branches) {
      Term dp = normalize_compound(dp_transform(branch.value, names));
      dt.branches.push_back({branch.prob, std::move(dp), branch.value});
    }
    prob.pairs.push_back(std::move(dt));
  }
  return prob;
}

std::map<std::string, Symbol> collect_symbols(const Ptrs& r) {
  std::map<std::string, Symbol> out;
  for (const ProbRule& rule : r.rules) {
    collect_symbols_in(rule.lhs, out);
    for (const auto& branch : rule.rhs.branches) collect_symbols_in(branch.value, out);
  }
  return out;
}

std::map<std::string, Symbol> collect_symbols(const DpProblem& prob) {
  std::map<std::string, Symbol> out = collect_symbols(prob.system);
  for (const CoupledDt& dt : prob.pairs) {
    collect_symbols_in(dt.lhs_sharp, out);
    collect_symbols_in(dt.lhs_orig, out);
    for (const auto& branch : dt.branches) {
      collect_symbols_in(branch.dp, out);
      collect_symbols_in(branch.rhs, out);
    }
  }
  return out;
}

}  // namespace probterm
