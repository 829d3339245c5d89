#include "synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace probterm {

// ---------------------------------------------------------------------------
// UPoly / SymPoly
// ---------------------------------------------------------------------------

UPoly UPoly::constant(Rat value) {
  UPoly p;
  if (value != 0) p.coeffs_[{}] = std::move(value);
  return p;
}

UPoly UPoly::unknown(int id) {
  UPoly p;
  p.coeffs_[{{id, 1}}] = 1;
  return p;
}

UPoly& UPoly::operator+=(const UPoly& other) {
  for (const auto& [mono, c] : other.coeffs_) {
    Rat& slot = coeffs_[mono];
    slot += c;
    if (slot == 0) coeffs_.erase(mono);
  }
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly out;
  for (const auto& [ma, ca] : a.coeffs_) {
    for (const auto& [mb, cb] : b.coeffs_) {
      UPoly::Mono merged = ma;
      for (const auto& [id, exp] : mb) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const auto& f) { return f.first == id; });
        if (it != merged.end()) {
          it->second += exp;
        } else {
          merged.emplace_back(id, exp);
        }
      }
      std::sort(merged.begin(), merged.end());
      Rat& slot = out.coeffs_[merged];
      slot += ca * cb;
      if (slot == 0) out.coeffs_.erase(merged);
    }
  }
  return out;
}

UPoly UPoly::scaled(const Rat& factor) const {
  UPoly out;
  if (factor == 0) return out;
  for (const auto& [mono, c] : coeffs_) out.coeffs_[mono] = c * factor;
  return out;
}

SymPoly SymPoly::variable(const std::string& name) {
  SymPoly p;
  p.coeffs_[{name}] = UPoly::constant(1);
  return p;
}

SymPoly SymPoly::from_upoly(UPoly u) {
  SymPoly p;
  if (!u.is_zero()) p.coeffs_[{}] = std::move(u);
  return p;
}

SymPoly& SymPoly::operator+=(const SymPoly& other) {
  for (const auto& [mono, u] : other.coeffs_) {
    UPoly& slot = coeffs_[mono];
    slot += u;
    if (slot.is_zero()) coeffs_.erase(mono);
  }
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  // Rule-variable monomials may pick up repeated variables here; the
  // constraint builder strips them and forces their coefficients to zero.
  SymPoly out;
  for (const auto& [ma, ua] : a.coeffs_) {
    for (const auto& [mb, ub] : b.coeffs_) {
      Monomial merged;
      merged.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(merged));
      UPoly& slot = out.coeffs_[merged];
      slot += ua * ub;
      if (slot.is_zero()) out.coeffs_.erase(merged);
    }
  }
  return out;
}

SymPoly SymPoly::scaled(const Rat& factor) const {
  SymPoly out;
  if (factor == 0) return out;
  for (const auto& [mono, u] : coeffs_) out.coeffs_[mono] = u.scaled(factor);
  return out;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) {
  SymPoly out = a;
  out += b.scaled(-1);
  return out;
}

// ---------------------------------------------------------------------------
// Template construction and symbolic interpretation
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> template_monomials(int arity, bool full_multilinear) {
  std::vector<std::vector<int>> out;
  out.push_back({});  // constant
  for (int i = 1; i <= arity; ++i) out.push_back({i});
  if (full_multilinear && arity <= 3) {
    for (int i = 1; i <= arity; ++i) {
      for (int j = i + 1; j <= arity; ++j) {
        out.push_back({i, j});
      }
    }
    if (arity == 3) out.push_back({1, 2, 3});
  }
  return out;
}

struct TemplateContext {
  ConstraintSet* cs;
  std::map<std::string, int> index_of;  // symbol name -> template index

  const SymbolTemplate& templ(const std::string& name) const {
    return cs->templates[index_of.at(name)];
  }
};

void build_templates(ConstraintSet& cs, const std::map<std::string, Symbol>& symbols,
                     bool full_multilinear, bool monotone_args,
                     TemplateContext& ctx) {
  for (const auto& [name, sym] : symbols) {  // std::map: sorted by name
    SymbolTemplate st;
    st.sym = sym;
    for (const std::vector<int>& mono : template_monomials(sym.arity, full_multilinear)) {
      TemplateUnknown u;
      u.id = static_cast<int>(cs.unknowns.size());
      u.symbol = name;
      u.arg_monomial = mono;
      u.lower_bound = (monotone_args && mono.size() == 1) ? 1 : 0;
      st.unknown_ids.push_back(u.id);
      cs.unknowns.push_back(std::move(u));
    }
    ctx.index_of[name] = static_cast<int>(cs.templates.size());
    cs.templates.push_back(std::move(st));
  }
}

SymPoly symbolic_interpret(const Term& t, const TemplateContext& ctx) {
  if (t.is_var()) return SymPoly::variable(t.var_name());
  std::vector<SymPoly> args;
  args.reserve(t.args().size());
  for (const Term& c : t.args()) args.push_back(symbolic_interpret(c, ctx));
  if (is_compound(t.root())) {
    SymPoly sum;
    for (const SymPoly& a : args) sum += a;
    return sum;
  }
  const SymbolTemplate& st = ctx.templ(t.root().name);
  SymPoly out;
  for (int uid : st.unknown_ids) {
    const TemplateUnknown& u = ctx.cs->unknowns[uid];
    SymPoly product = SymPoly::from_upoly(UPoly::unknown(uid));
    for (int arg_index : u.arg_monomial) {
      product = product * args[arg_index - 1];
    }
    out += product;
  }
  return out;
}

bool upoly_equal(const UPoly& a, const UPoly& b) {
  return a.monomials() == b.monomials();
}

// Removes rule-variable monomials with repeated variables; a valid candidate
// must zero their coefficients (that is exactly when the concrete
// interpretation stays multilinear).
SymPoly strip_squares(const SymPoly& p, std::vector<UPoly>& zeros) {
  SymPoly out;
  for (const auto& [mono, u] : p.monomials()) {
    bool repeated = std::adjacent_find(mono.begin(), mono.end()) != mono.end();
    if (!repeated) {
      out += [&] {
        SymPoly single;
        single += SymPoly::from_upoly(u);
        // re-attach the monomial: build via multiplication by variables
        for (const std::string& v : mono) single = single * SymPoly::variable(v);
        return single;
      }();
    } else {
      bool known = std::any_of(zeros.begin(), zeros.end(),
                               [&](const UPoly& z) { return upoly_equal(z, u); });
      if (!known) zeros.push_back(u);
    }
  }
  return out;
}

SymPoly interpret_clean(const Term& t, const TemplateContext& ctx, std::vector<UPoly>& zeros) {
  return strip_squares(symbolic_interpret(t, ctx), zeros);
}

}  // namespace

ConstraintSet direct_constraints(const Ptrs& r, const TemplateOptions& opts) {
  ConstraintSet cs;
  TemplateContext ctx{&cs, {}};
  build_templates(cs, collect_symbols(r), opts.full_multilinear, /*monotone_args=*/true, ctx);

  std::vector<UPoly> zeros;
  for (int i = 0; i < static_cast<int>(r.rules.size()); ++i) {
    const ProbRule& rule = r.rules[i];
    SymPoly lhs = interpret_clean(rule.lhs, ctx, zeros);

    SymPoly expected;
    StrictConstraint strict;
    strict.origin = "rule " + std::to_string(i + 1) + " strict branch";
    for (const auto& branch : rule.rhs.branches) {
      SymPoly rhs = interpret_clean(branch.value, ctx, zeros);
      expected += rhs.scaled(branch.prob);
      strict.alternatives.push_back({lhs - rhs, std::nullopt});
    }
    cs.weak.push_back({lhs - expected, "rule " + std::to_string(i + 1) + " expected value"});
    cs.strict_required.push_back(std::move(strict));
  }
  cs.must_be_zero = std::move(zeros);
  return cs;
}

ConstraintSet rpp_constraints(const DpProblem& prob, const TemplateOptions& opts) {
  ConstraintSet cs;
  TemplateContext ctx{&cs, {}};
  build_templates(cs, collect_symbols(prob), opts.full_multilinear, /*monotone_args=*/false, ctx);

  std::vector<UPoly> zeros;
  for (int i = 0; i < static_cast<int>(prob.system.rules.size()); ++i) {
    const ProbRule& rule = prob.system.rules[i];
    SymPoly lhs = interpret_clean(rule.lhs, ctx, zeros);
    SymPoly expected;
    for (const auto& branch : rule.rhs.branches) {
      expected += interpret_clean(branch.value, ctx, zeros).scaled(branch.prob);
    }
    cs.weak.push_back({lhs - expected, "system rule " + std::to_string(i + 1)});
  }

  for (int i = 0; i < static_cast<int>(prob.pairs.size()); ++i) {
    const CoupledDt& dt = prob.pairs[i];
    SymPoly lhs_sharp = interpret_clean(dt.lhs_sharp, ctx, zeros);
    SymPoly lhs_orig = interpret_clean(dt.lhs_orig, ctx, zeros);
    bool coupled = [&] {
      // same membership test as the checker
      for (const ProbRule& cand : prob.system.rules) {
        ProbRule mine = dt.coupled_rule();
        if (!(cand.lhs == mine.lhs)) continue;
        auto key = [](const ProbRule& r) {
          std::vector<std::pair<Rat, std::string>> out;
          for (const auto& b : r.rhs.branches) out.emplace_back(b.prob, to_string(b.value));
          std::sort(out.begin(), out.end());
          return out;
        };
        if (key(cand) == key(mine)) return true;
      }
      return false;
    }();

    SymPoly expected_dp;
    StrictConstraint strict;
    strict.origin = "pair " + std::to_string(i + 1) + " strict branch";
    for (const auto& branch : dt.branches) {
      SymPoly dp = interpret_clean(branch.dp, ctx, zeros);
      expected_dp += dp.scaled(branch.prob);
      StrictAlternative alt;
      alt.strict_diff = lhs_sharp - dp;
      if (coupled) {
        alt.side_diff = lhs_orig - interpret_clean(branch.rhs, ctx, zeros);
      }
      strict.alternatives.push_back(std::move(alt));
    }
    cs.weak.push_back({lhs_sharp - expected_dp, "pair " + std::to_string(i + 1) + " expected dp"});
    cs.strict_optional.push_back(std::move(strict));
  }
  cs.must_be_zero = std::move(zeros);
  return cs;
}

// ---------------------------------------------------------------------------
// Compilation to integer evaluation
// ---------------------------------------------------------------------------

namespace {

struct CMono {
  long long coeff;
  std::vector<std::pair<int, int>> factors;  // (unknown, exponent)
};

struct CPoly {
  std::vector<CMono> monos;
  bool big = false;                    // overflow risk: evaluate exactly
  std::vector<std::pair<UPoly::Mono, Rat>> exact;  // scaled rational form

  long long eval(const std::vector<int>& vals) const {
    long long total = 0;
    for (const CMono& m : monos) {
      long long v = m.coeff;
      for (const auto& [u, e] : m.factors) {
        for (int k = 0; k < e; ++k) v *= vals[u];
      }
      total += v;
    }
    return total;
  }

  Rat eval_exact(const std::vector<int>& vals) const {
    Rat total = 0;
    for (const auto& [mono, c] : exact) {
      Rat v = c;
      for (const auto& [u, e] : mono) {
        for (int k = 0; k < e; ++k) v *= vals[u];
      }
      total += v;
    }
    return total;
  }
};

enum class CmpKind { GeqZero, GeqOne, EqZero };

struct CCheck {
  CPoly poly;
  CmpKind kind;
  long long threshold = 0;  // scaled value of "1" for GeqOne
  Rat threshold_exact = 0;

  bool eval(const std::vector<int>& vals) const {
    if (poly.big) {
      Rat v = poly.eval_exact(vals);
      switch (kind) {
        case CmpKind::GeqZero: return v >= 0;
        case CmpKind::GeqOne: return v >= threshold_exact;
        case CmpKind::EqZero: return v == 0;
      }
    }
    long long v = poly.eval(vals);
    switch (kind) {
      case CmpKind::GeqZero: return v >= 0;
      case CmpKind::GeqOne: return v >= threshold;
      case CmpKind::EqZero: return v == 0;
    }
    return false;
  }
};

struct CompiledGroup {
  std::vector<CCheck> checks;  // all must hold
  bool eval(const std::vector<int>& vals) const {
    for (const CCheck& c : checks) {
      if (!c.eval(vals)) return false;
    }
    return true;
  }
};

struct CompiledStrict {
  std::vector<CompiledGroup> alternatives;  // one must hold
  bool eval(const std::vector<int>& vals) const {
    for (const CompiledGroup& alt : alternatives) {
      if (alt.eval(vals)) return true;
    }
    return false;
  }
};

BigInt lcm_denominators(const UPoly& u, BigInt acc) {
  for (const auto& [mono, c] : u.monomials()) {
    BigInt den = denominator(c);
    acc = acc / gcd(acc, den) * den;
  }
  return acc;
}

int max_unknown(const UPoly& u, int acc) {
  for (const auto& [mono, c] : u.monomials()) {
    for (const auto& [id, exp] : mono) acc = std::max(acc, id);
  }
  return acc;
}

// Scales the polynomial by `scale`, producing the integer form; falls back
// to exact evaluation when coefficients or intermediate values could leave
// the int64 range at the given coefficient bound.
CPoly compile_upoly(const UPoly& u, const BigInt& scale, int max_coeff) {
  CPoly out;
  BigInt bound = 0;
  for (const auto& [mono, c] : u.monomials()) {
    Rat scaled = c * Rat(scale);
    BigInt num = numerator(scaled);  // denominator 1 by construction
    BigInt mag = abs(num);
    for (const auto& [id, exp] : mono) {
      for (int k = 0; k < exp; ++k) mag *= max_coeff > 0 ? max_coeff : 1;
    }
    bound += mag;
    out.exact.emplace_back(mono, Rat(num));
  }
  if (bound >= (BigInt(1) << 62)) {
    out.big = true;
    return out;
  }
  for (const auto& [mono, c] : out.exact) {
    out.monos.push_back({numerator(c).convert_to<long long>(), mono});
  }
  return out;
}

// The coefficient-wise checks for diff >= 0 (or the strict variant with the
// constant coefficient at least 1). All checks share one integer scale.
std::vector<CCheck> compile_diff(const SymPoly& diff, bool strict, int max_coeff) {
  BigInt scale = 1;
  for (const auto& [mono, u] : diff.monomials()) scale = lcm_denominators(u, scale);

  std::vector<CCheck> out;
  bool saw_constant = false;
  for (const auto& [mono, u] : diff.monomials()) {
    CCheck check;
    check.poly = compile_upoly(u, scale, max_coeff);
    if (mono.empty() && strict) {
      check.kind = CmpKind::GeqOne;
      check.threshold_exact = Rat(scale);
      check.threshold = check.poly.big ? 0 : scale.convert_to<long long>();
      saw_constant = true;
    } else {
      check.kind = CmpKind::GeqZero;
    }
    out.push_back(std::move(check));
  }
  if (strict && !saw_constant) {
    // constant coefficient of the difference is identically 0 < 1
    CCheck never;
    never.kind = CmpKind::GeqOne;
    never.threshold = 1;
    out.push_back(std::move(never));
  }
  // Evaluate the constant check first: it is the most selective for strict
  // constraints.
  std::stable_sort(out.begin(), out.end(), [](const CCheck& a, const CCheck& b) {
    return (a.kind == CmpKind::GeqOne) > (b.kind == CmpKind::GeqOne);
  });
  return out;
}

int ready_level(const SymPoly& p, int acc = -1) {
  for (const auto& [mono, u] : p.monomials()) acc = max_unknown(u, acc);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Absent: return "template-space-exhausted";
    case SearchStatus::Exhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

struct Searcher {
  const ConstraintSet& cs;
  const SearchBudget& budget;
  int bound = 1;       // current coefficient bound B
  int prev_bound = 0;  // already fully enumerated bound

  std::vector<int> vals;
  std::vector<std::vector<const CompiledGroup*>> weak_at;      // by level
  std::vector<std::vector<const CompiledStrict*>> strict_at;   // by level
  std::vector<CompiledStrict> optional_compiled;               // pair index order
  std::vector<CompiledGroup> weak_compiled;
  std::vector<CompiledStrict> required_compiled;
  std::vector<CompiledGroup> zero_compiled;
  std::vector<std::vector<const CompiledGroup*>> zero_at;

  std::uint64_t nodes = 0;
  bool aborted = false;
  std::vector<int> found_vals;
  std::vector<int> found_strict;

  explicit Searcher(const ConstraintSet& cs, const SearchBudget& budget)
      : cs(cs), budget(budget) {}

  void compile() {
    int n = static_cast<int>(cs.unknowns.size());
    vals.assign(n, 0);
    weak_at.assign(n + 1, {});
    strict_at.assign(n + 1, {});
    zero_at.assign(n + 1, {});

    weak_compiled.clear();
    weak_compiled.reserve(cs.weak.size());
    for (const WeakConstraint& w : cs.weak) {
      CompiledGroup g;
      g.checks = compile_diff(w.diff, false, budget.max_coeff);
      int level = std::max(0, ready_level(w.diff));
      weak_compiled.push_back(std::move(g));
      weak_at[level].push_back(&weak_compiled.back());
    }
    required_compiled.clear();
    required_compiled.reserve(cs.strict_required.size());
    for (const StrictConstraint& s : cs.strict_required) {
      CompiledStrict c;
      int level = 0;
      for (const StrictAlternative& alt : s.alternatives) {
        CompiledGroup g;
        g.checks = compile_diff(alt.strict_diff, true, budget.max_coeff);
        level = std::max(level, ready_level(alt.strict_diff));
        if (alt.side_diff) {
          auto side = compile_diff(*alt.side_diff, false, budget.max_coeff);
          g.checks.insert(g.checks.end(), side.begin(), side.end());
          level = std::max(level, ready_level(*alt.side_diff));
        }
        c.alternatives.push_back(std::move(g));
      }
      required_compiled.push_back(std::move(c));
      strict_at[std::max(0, level)].push_back(&required_compiled.back());
    }
    optional_compiled.clear();
    for (const StrictConstraint& s : cs.strict_optional) {
      CompiledStrict c;
      for (const StrictAlternative& alt : s.alternatives) {
        CompiledGroup g;
        g.checks = compile_diff(alt.strict_diff, true, budget.max_coeff);
        if (alt.side_diff) {
          auto side = compile_diff(*alt.side_diff, false, budget.max_coeff);
          g.checks.insert(g.checks.end(), side.begin(), side.end());
        }
        c.alternatives.push_back(std::move(g));
      }
      optional_compiled.push_back(std::move(c));
    }
    zero_compiled.clear();
    zero_compiled.reserve(cs.must_be_zero.size());
    for (const UPoly& z : cs.must_be_zero) {
      CompiledGroup g;
      CCheck check;
      BigInt scale = lcm_denominators(z, 1);
      check.poly = compile_upoly(z, scale, budget.max_coeff);
      check.kind = CmpKind::EqZero;
      g.checks.push_back(std::move(check));
      int level = std::max(0, max_unknown(z, -1));
      zero_compiled.push_back(std::move(g));
      zero_at[level].push_back(&zero_compiled.back());
    }
  }

  bool out_of_budget() {
    if (nodes >= budget.max_nodes) return true;
    if (budget.deadline && (nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() >= *budget.deadline) {
      return true;
    }
    return false;
  }

  bool level_ok(int level) const {
    for (const CompiledGroup* g : weak_at[level]) {
      if (!g->eval(vals)) return false;
    }
    for (const CompiledGroup* g : zero_at[level]) {
      if (!g->eval(vals)) return false;
    }
    for (const CompiledStrict* s : strict_at[level]) {
      if (!s->eval(vals)) return false;
    }
    return true;
  }

  bool at_leaf(bool any_new) {
    if (prev_bound > 0 && !any_new) return false;  // enumerated in a previous pass
    if (!cs.strict_optional.empty()) {
      std::vector<int> satisfied;
      for (int i = 0; i < static_cast<int>(optional_compiled.size()); ++i) {
        if (optional_compiled[i].eval(vals)) satisfied.push_back(i);
      }
      if (satisfied.empty()) return false;
      found_strict = std::move(satisfied);
    }
    found_vals = vals;
    return true;
  }

  // Enumerates values of unknown `level` and recurses; returns true on hit.
  bool enumerate(int level, bool any_new) {
    if (level == static_cast<int>(vals.size())) return at_leaf(any_new);
    int lo = cs.unknowns[level].lower_bound;
    for (int v = lo; v <= bound; ++v) {
      ++nodes;
      if (out_of_budget()) {
        aborted = true;
        return false;
      }
      vals[level] = v;
      if (!level_ok(level)) continue;
      if (enumerate(level + 1, any_new || v > prev_bound)) return true;
      if (aborted) return false;
    }
    return false;
  }

  SearchStatus run() {
    compile();
    if (vals.empty()) {
      // no unknowns: constraints are ground
      bool ok = true;
      for (const CompiledGroup& g : weak_compiled) ok = ok && g.eval(vals);
      for (const CompiledStrict& s : required_compiled) ok = ok && s.eval(vals);
      for (const CompiledGroup& g : zero_compiled) ok = ok && g.eval(vals);
      if (ok && !cs.strict_optional.empty()) ok = at_leaf(true);
      else if (ok) found_vals = vals;
      return ok ? SearchStatus::Found : SearchStatus::Absent;
    }
    std::vector<int> bounds;
    for (int b = 1; b < budget.max_coeff; b *= 2) bounds.push_back(b);
    bounds.push_back(budget.max_coeff);
    for (int b : bounds) {
      bound = b;
      if (enumerate(0, false)) return SearchStatus::Found;
      if (aborted) return SearchStatus::Exhausted;
      prev_bound = b;
    }
    return SearchStatus::Absent;
  }

  PolyInterp extract() const {
    PolyInterp interp;
    for (const SymbolTemplate& st : cs.templates) {
      Polynomial p;
      for (int uid : st.unknown_ids) {
        const TemplateUnknown& u = cs.unknowns[uid];
        Monomial mono;
        for (int arg : u.arg_monomial) mono.push_back(formal_var(arg));
        p.set(std::move(mono), found_vals[uid]);
      }
      interp.set(st.sym.name, std::move(p));
    }
    return interp;
  }
};

}  // namespace

DirectSynthesis synthesize_direct(const Ptrs& r, const SearchBudget& budget) {
  TemplateOptions opts;
  opts.full_multilinear = budget.full_multilinear;
  ConstraintSet cs = direct_constraints(r, opts);
  Searcher searcher(cs, budget);
  DirectSynthesis result;
  result.status = searcher.run();
  result.nodes = searcher.nodes;
  if (result.status == SearchStatus::Found) result.interp = searcher.extract();
  return result;
}

RppSynthesis synthesize_rpp(const DpProblem& prob, const SearchBudget& budget) {
  if (prob.pairs.empty()) {
    throw std::invalid_argument("synthesize_rpp: empty pair set (P_> cannot be nonempty)");
  }
  TemplateOptions opts;
  opts.full_multilinear = budget.full_multilinear;
  ConstraintSet cs = rpp_constraints(prob, opts);
  Searcher searcher(cs, budget);
  RppSynthesis result;
  result.status = searcher.run();
  result.nodes = searcher.nodes;
  if (result.status == SearchStatus::Found) {
    result.interp = searcher.extract();
    result.strict = searcher.found_strict;
  }
  return result;
}

// ---------------------------------------------------------------------------
// SMT-LIB export
// ---------------------------------------------------------------------------

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  }
  return out;
}

std::string smt_int(const BigInt& v) {
  if (v < 0) return "(- " + BigInt(-v).str() + ")";
  return v.str();
}

std::string smt_product(const BigInt& coeff, const UPoly::Mono& mono,
                        const std::vector<std::string>& names) {
  std::vector<std::string> factors;
  if (coeff != 1 || mono.empty()) factors.push_back(smt_int(coeff));
  for (const auto& [id, exp] : mono) {
    for (int k = 0; k < exp; ++k) factors.push_back(names[id]);
  }
  if (factors.size() == 1) return factors[0];
  std::string out = "(*";
  for (const std::string& f : factors) out += " " + f;
  return out + ")";
}

// Scales a UPoly to integers and renders "(+ ...)".
std::string smt_sum(const UPoly& u, const BigInt& scale,
                    const std::vector<std::string>& names) {
  if (u.monomials().empty()) return "0";
  std::vector<std::string> terms;
  for (const auto& [mono, c] : u.monomials()) {
    Rat scaled = c * Rat(scale);
    terms.push_back(smt_product(numerator(scaled), mono, names));
  }
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const std::string& t : terms) out += " " + t;
  return out + ")";
}

std::string smt_diff(const SymPoly& diff, bool strict,
                     const std::vector<std::string>& names) {
  BigInt scale = 1;
  for (const auto& [mono, u] : diff.monomials()) scale = lcm_denominators(u, scale);
  std::vector<std::string> conj;
  bool saw_constant = false;
  for (const auto& [mono, u] : diff.monomials()) {
    std::string expr = smt_sum(u, scale, names);
    if (mono.empty() && strict) {
      conj.push_back("(>= " + expr + " " + scale.str() + ")");
      saw_constant = true;
    } else {
      conj.push_back("(>= " + expr + " 0)");
    }
  }
  if (strict && !saw_constant) conj.push_back("false");
  if (conj.empty()) return "true";
  if (conj.size() == 1) return conj[0];
  std::string out = "(and";
  for (const std::string& c : conj) out += " " + c;
  return out + ")";
}

std::string smt_strict(const StrictConstraint& s, const std::vector<std::string>& names) {
  std::vector<std::string> alts;
  for (const StrictAlternative& alt : s.alternatives) {
    std::string a = smt_diff(alt.strict_diff, true, names);
    if (alt.side_diff) {
      a = "(and " + a + " " + smt_diff(*alt.side_diff, false, names) + ")";
    }
    alts.push_back(a);
  }
  if (alts.empty()) return "false";
  if (alts.size() == 1) return alts[0];
  std::string out = "(or";
  for (const std::string& a : alts) out += " " + a;
  return out + ")";
}

}  // namespace

std::string export_smtlib(const ConstraintSet& cs) {
  std::ostringstream out;
  out << "(set-logic QF_NIA)\n";

  std::vector<std::string> names(cs.unknowns.size());
  std::set<std::string> used;
  for (const TemplateUnknown& u : cs.unknowns) {
    std::string tag = "0";
    if (!u.arg_monomial.empty()) {
      tag.clear();
      for (std::size_t k = 0; k < u.arg_monomial.size(); ++k) {
        if (k > 0) tag += "_";
        tag += std::to_string(u.arg_monomial[k]);
      }
    }
    std::string name = "c_" + sanitize(u.symbol) + "_" + tag;
    if (!used.insert(name).second) {
      name += "_" + std::to_string(u.id);
      used.insert(name);
    }
    names[u.id] = name;
  }

  for (const TemplateUnknown& u : cs.unknowns) {
    out << "(declare-const " << names[u.id] << " Int)\n";
  }
  for (const TemplateUnknown& u : cs.unknowns) {
    out << "(assert (>= " << names[u.id] << " " << u.lower_bound << "))\n";
  }

  bool any = false;
  for (const WeakConstraint& w : cs.weak) {
    out << "; " << w.origin << "\n";
    out << "(assert " << smt_diff(w.diff, false, names) << ")\n";
    any = true;
  }
  for (const StrictConstraint& s : cs.strict_required) {
    out << "; " << s.origin << "\n";
    out << "(assert " << smt_strict(s, names) << ")\n";
    any = true;
  }
  if (!cs.strict_optional.empty()) {
    out << "; at least one pair strictly decreasing\n(assert (or";
    for (const StrictConstraint& s : cs.strict_optional) {
      out << " " << smt_strict(s, names);
    }
    out << "))\n";
    any = true;
  }
  for (const UPoly& z : cs.must_be_zero) {
    out << "(assert (= " << smt_sum(z, lcm_denominators(z, 1), names) << " 0))\n";
    any = true;
  }
  if (!any && cs.unknowns.empty()) out << "(assert true)\n";
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

}  // namespace probterm
