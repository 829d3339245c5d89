#include "prover.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace probterm {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Ast: return "AST";
    case Verdict::IAst: return "iAST";
    case Verdict::Maybe: return "MAYBE";
  }
  return "?";
}

std::string to_string(Technique t) {
  switch (t) {
    case Technique::Portfolio: return "Portfolio";
    case Technique::ChainCriterion: return "ChainCriterion";
    case Technique::DgProcessor: return "DGProcessor";
    case Technique::RpProcessor: return "RPProcessor";
    case Technique::DirectPoly: return "DirectPoly";
    case Technique::TrivialEmpty: return "TrivialEmpty";
    case Technique::RuleRemoval: return "RuleRemoval";
    case Technique::TermRemoval: return "TermRemoval";
    case Technique::Prob1Conversion: return "Prob1Conversion";
  }
  return "?";
}

namespace {

struct PipelineContext {
  const ProverConfig& config;
  SearchBudget budget;
  std::vector<std::string>* reasons;
};

ProofNode trivial_node(DpProblem prob) {
  ProofNode node;
  node.technique = Technique::TrivialEmpty;
  node.status = NodeStatus::Proven;
  node.problem = std::move(prob);
  return node;
}

// Dependency graph decomposition followed by one reduction-pair attempt per
// SCC; successful removals recurse on the remainder.
ProofNode solve_dp(const DpProblem& prob, const PipelineContext& ctx) {
  if (prob.pairs.empty()) return trivial_node(prob);

  ProofNode node;
  node.technique = Technique::DgProcessor;
  node.problem = prob;
  node.graph = build_graph(prob, ctx.config.nf_filter);
  node.components = sccs(*node.graph);

  if (node.components.empty()) {
    DpProblem empty;
    empty.system = prob.system;
    node.children.push_back(trivial_node(std::move(empty)));
  }
  for (const std::vector<int>& comp : node.components) {
    DpProblem sub = prob.restricted_to(comp);
    ProofNode rp;
    rp.technique = Technique::RpProcessor;
    rp.problem = sub;
    RppSynthesis synth = synthesize_rpp(sub, ctx.budget);
    if (synth.status == SearchStatus::Found) {
      rp.status = NodeStatus::Proven;
      rp.interp = synth.interp;
      rp.strict = synth.strict;
      rp.children.push_back(solve_dp(sub.without(synth.strict), ctx));
      if (rp.children.back().status != NodeStatus::Proven) {
        rp.status = NodeStatus::Inconclusive;
      }
    } else {
      rp.status = NodeStatus::Inconclusive;
      rp.reason = to_string(synth.status);
      ctx.reasons->push_back("reduction pairs on component of " +
                             std::to_string(sub.pairs.size()) + " pair(s): " + rp.reason);
    }
    node.children.push_back(std::move(rp));
  }

  node.status = NodeStatus::Proven;
  for (const ProofNode& child : node.children) {
    if (child.status != NodeStatus::Proven) node.status = NodeStatus::Inconclusive;
  }
  return node;
}

ProofNode chain_criterion(const Ptrs& r, const PipelineContext& ctx) {
  ProofNode node;
  node.technique = Technique::ChainCriterion;
  node.system = r;
  node.children.push_back(solve_dp(dependency_tuples(r), ctx));
  node.status = node.children.back().status;
  return node;
}

ProofNode direct_attempt(const Ptrs& r, const PipelineContext& ctx) {
  ProofNode node;
  node.technique = Technique::DirectPoly;
  node.system = r;
  DirectSynthesis synth = synthesize_direct(r, ctx.budget);
  if (synth.status == SearchStatus::Found) {
    node.status = NodeStatus::Proven;
    node.interp = synth.interp;
  } else {
    node.status = NodeStatus::Inconclusive;
    node.reason = to_string(synth.status);
    ctx.reasons->push_back("direct criterion: " + node.reason);
  }
  return node;
}

}  // namespace

Proof prove(const Ptrs& r, const ProverConfig& config) {
  using Clock = std::chrono::steady_clock;
  Clock::time_point start = Clock::now();
  auto deadline_at = [&](double fraction) {
    return start + std::chrono::milliseconds(
                       static_cast<long>(config.timeout_ms * fraction));
  };

  Proof proof;
  proof.nf_filter = config.nf_filter;

  SearchBudget base;
  base.max_coeff = config.max_coeff;
  base.full_multilinear = config.full_multilinear;
  base.max_nodes = config.max_nodes;

  PipelineContext ctx{config, base, &proof.maybe_reasons};

  switch (config.technique) {
    case TechniqueChoice::Dp: {
      ctx.budget.deadline = deadline_at(1.0);
      proof.root = chain_criterion(r, ctx);
      proof.verdict =
          proof.root.status == NodeStatus::Proven ? Verdict::IAst : Verdict::Maybe;
      break;
    }
    case TechniqueChoice::Direct: {
      ctx.budget.deadline = deadline_at(1.0);
      proof.root = direct_attempt(r, ctx);
      proof.verdict =
          proof.root.status == NodeStatus::Proven ? Verdict::Ast : Verdict::Maybe;
      break;
    }
    case TechniqueChoice::Auto: {
      // DP framework first (the stronger route), then the direct criterion to
      // upgrade iAST to AST; 70/30 split of the shared timeout.
      ctx.budget.deadline = deadline_at(0.7);
      ProofNode dp = chain_criterion(r, ctx);
      ctx.budget.deadline = deadline_at(1.0);
      ProofNode direct = direct_attempt(r, ctx);

      proof.root.technique = Technique::Portfolio;
      proof.root.system = r;
      bool dp_ok = dp.status == NodeStatus::Proven;
      bool direct_ok = direct.status == NodeStatus::Proven;
      proof.root.children.push_back(std::move(dp));
      proof.root.children.push_back(std::move(direct));
      proof.root.status =
          (dp_ok || direct_ok) ? NodeStatus::Proven : NodeStatus::Inconclusive;
      proof.verdict = direct_ok ? Verdict::Ast : (dp_ok ? Verdict::IAst : Verdict::Maybe);
      break;
    }
  }
  if (proof.verdict != Verdict::Maybe) proof.maybe_reasons.clear();
  return proof;
}

// ---------------------------------------------------------------------------
// Proof checking
// ---------------------------------------------------------------------------

namespace {

struct CheckFail {
  std::string message;
};

void require(bool cond, const std::string& message) {
  if (!cond) throw CheckFail{message};
}

void check_node(const ProofNode& node, const Proof& proof);

void check_children_all_proven(const ProofNode& node) {
  bool all = std::all_of(node.children.begin(), node.children.end(),
                         [](const ProofNode& c) { return c.status == NodeStatus::Proven; });
  require((node.status == NodeStatus::Proven) == all,
          to_string(node.technique) + ": status inconsistent with children");
}

void check_node(const ProofNode& node, const Proof& proof) {
  switch (node.technique) {
    case Technique::Portfolio: {
      require(!node.children.empty(), "Portfolio: no children");
      require(node.system.has_value(), "Portfolio: missing system");
      bool any = false;
      for (const ProofNode& child : node.children) {
        check_node(child, proof);
        any = any || child.status == NodeStatus::Proven;
      }
      require((node.status == NodeStatus::Proven) == any,
              "Portfolio: status inconsistent with children");
      break;
    }
    case Technique::ChainCriterion: {
      require(node.system.has_value(), "ChainCriterion: missing system");
      require(node.children.size() == 1, "ChainCriterion: expected one child");
      const ProofNode& child = node.children.front();
      require(child.problem.has_value(), "ChainCriterion: child has no problem");
      DpProblem expected = dependency_tuples(*node.system);
      require(*child.problem == expected,
              "ChainCriterion: child problem differs from the dependency tuples");
      check_node(child, proof);
      check_children_all_proven(node);
      break;
    }
    case Technique::TrivialEmpty: {
      require(node.problem.has_value(), "TrivialEmpty: missing problem");
      require(node.problem->pairs.empty(), "TrivialEmpty: pair set not empty");
      require(node.status == NodeStatus::Proven, "TrivialEmpty: must be proven");
      break;
    }
    case Technique::DgProcessor: {
      require(node.problem.has_value(), "DGProcessor: missing problem");
      require(node.graph.has_value(), "DGProcessor: missing graph");
      DepGraph recomputed = build_graph(*node.problem, proof.nf_filter);
      require(recomputed == *node.graph, "DGProcessor: stored graph differs");
      require(sccs(recomputed) == node.components, "DGProcessor: stored SCCs differ");
      if (node.components.empty()) {
        require(node.children.size() == 1 &&
                    node.children.front().technique == Technique::TrivialEmpty,
                "DGProcessor: acyclic graph needs a trivial child");
        check_node(node.children.front(), proof);
      } else {
        require(node.children.size() == node.components.size(),
                "DGProcessor: one child per SCC expected");
        for (std::size_t i = 0; i < node.components.size(); ++i) {
          const ProofNode& child = node.children[i];
          require(child.problem.has_value(), "DGProcessor: child has no problem");
          require(*child.problem == node.problem->restricted_to(node.components[i]),
                  "DGProcessor: child problem is not the SCC restriction");
          check_node(child, proof);
        }
      }
      check_children_all_proven(node);
      break;
    }
    case Technique::RpProcessor: {
      require(node.problem.has_value(), "RPProcessor: missing problem");
      if (node.status == NodeStatus::Inconclusive && !node.interp.has_value()) {
        break;  // recorded failure, nothing to re-validate
      }
      require(node.interp.has_value(), "RPProcessor: missing interpretation");
      require(!node.strict.empty(), "RPProcessor: empty strict set");
      RppCheck check = check_rpp(*node.problem, *node.interp, node.strict);
      require(check.ok, "RPProcessor: certificate fails re-validation");
      require(node.children.size() == 1, "RPProcessor: expected one child");
      const ProofNode& child = node.children.front();
      require(child.problem.has_value() &&
                  *child.problem == node.problem->without(node.strict),
              "RPProcessor: child problem is not the strict-set removal");
      check_node(child, proof);
      check_children_all_proven(node);
      break;
    }
    case Technique::DirectPoly: {
      require(node.system.has_value(), "DirectPoly: missing system");
      if (node.status == NodeStatus::Proven) {
        require(node.interp.has_value(), "DirectPoly: missing interpretation");
        require(check_direct(*node.system, *node.interp).ok,
                "DirectPoly: certificate fails re-validation");
      }
      break;
    }
    default:
      throw CheckFail{"unsupported technique tag " + to_string(node.technique)};
  }
}

// The verdict must be backed by the right kind of proven node on R itself.
bool verdict_supported(const Ptrs& r, const Proof& proof) {
  auto direct_on_r = [&](const ProofNode& n) {
    return n.technique == Technique::DirectPoly && n.status == NodeStatus::Proven &&
           n.system.has_value() && *n.system == r;
  };
  auto chain_on_r = [&](const ProofNode& n) {
    return n.technique == Technique::ChainCriterion && n.status == NodeStatus::Proven &&
           n.system.has_value() && *n.system == r;
  };
  const ProofNode& root = proof.root;
  std::vector<const ProofNode*> candidates{&root};
  if (root.technique == Technique::Portfolio) {
    for (const ProofNode& c : root.children) candidates.push_back(&c);
  }
  switch (proof.verdict) {
    case Verdict::Ast:
      return std::any_of(candidates.begin(), candidates.end(),
                         [&](const ProofNode* n) { return direct_on_r(*n); });
    case Verdict::IAst:
      return std::any_of(candidates.begin(), candidates.end(),
                         [&](const ProofNode* n) { return chain_on_r(*n); });
    case Verdict::Maybe:
      return true;
  }
  return false;
}

}  // namespace

bool check_proof(const Ptrs& r, const Proof& proof, std::string* why) {
  try {
    require(proof.schema == 1, "unsupported schema version");
    check_node(proof.root, proof);
    require(verdict_supported(r, proof), "verdict not supported by a proven technique");
    return true;
  } catch (const CheckFail& fail) {
    if (why) *why = fail.message;
    return false;
  } catch (const std::exception& e) {
    if (why) *why = e.what();
    return false;
  }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

void render_interp(const PolyInterp& interp, int indent, std::ostringstream& out) {
  for (const auto& [sym, poly] : interp.entries()) {
    out << std::string(indent, ' ') << "Pol(" << sym << ") = " << to_string(poly) << "\n";
  }
}

void render_node(const ProofNode& node, int depth, std::ostringstream& out) {
  std::string pad(2 * depth, ' ');
  out << pad << "* ";
  switch (node.technique) {
    case Technique::Portfolio:
      out << "proof strategy\n";
      break;
    case Technique::ChainCriterion:
      out << "chain criterion: " << node.children.front().problem->pairs.size()
          << " dependency tuple(s)\n";
      break;
    case Technique::DgProcessor: {
      out << "dependency graph: " << node.graph->edges.size() << " edge(s), "
          << node.components.size() << " SCC(s)";
      for (const auto& comp : node.components) {
        out << " {";
        for (std::size_t i = 0; i < comp.size(); ++i) {
          out << (i ? "," : "") << comp[i] + 1;
        }
        out << "}";
      }
      out << "\n";
      break;
    }
    case Technique::RpProcessor: {
      out << "reduction pairs on " << node.problem->pairs.size() << " pair(s)";
      if (node.status == NodeStatus::Proven) {
        out << ", strict {";
        for (std::size_t i = 0; i < node.strict.size(); ++i) {
          out << (i ? "," : "") << node.strict[i] + 1;
        }
        out << "}\n";
        render_interp(*node.interp, 2 * depth + 4, out);
      } else {
        out << ": inconclusive (" << node.reason << ")\n";
      }
      break;
    }
    case Technique::DirectPoly:
      if (node.status == NodeStatus::Proven) {
        out << "direct polynomial interpretation\n";
        render_interp(*node.interp, 2 * depth + 4, out);
      } else {
        out << "direct polynomial interpretation: inconclusive (" << node.reason << ")\n";
      }
      break;
    case Technique::TrivialEmpty:
      out << "no pairs left: trivially terminating\n";
      break;
    default:
      out << to_string(node.technique) << "\n";
      break;
  }
  for (const ProofNode& child : node.children) render_node(child, depth + 1, out);
}

}  // namespace

std::string render_text(const Proof& proof) {
  std::ostringstream out;
  out << "verdict: " << to_string(proof.verdict) << "\n";
  for (const std::string& reason : proof.maybe_reasons) {
    out << "reason: " << reason << "\n";
  }
  render_node(proof.root, 0, out);
  return out.str();
}

std::string render(const Proof& proof, OutputFormat format) {
  if (format == OutputFormat::Json) return proof_to_json(proof).dump(2) + "\n";
  return render_text(proof);
}

// ---------------------------------------------------------------------------
// JSON (schema documented in the README)
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json term_to_json(const Term& t) {
  if (t.is_var()) return json{{"var", t.var_name()}};
  json args = json::array();
  for (const Term& c : t.args()) args.push_back(term_to_json(c));
  return json{{"sym", t.root().name}, {"args", std::move(args)}};
}

std::string kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Defined: return "defined";
    case SymbolKind::Constructor: return "constructor";
    case SymbolKind::Tuple: return "tuple";
    case SymbolKind::Compound: return "compound";
  }
  return "?";
}

SymbolKind kind_from(const std::string& name) {
  if (name == "defined") return SymbolKind::Defined;
  if (name == "constructor") return SymbolKind::Constructor;
  if (name == "tuple") return SymbolKind::Tuple;
  if (name == "compound") return SymbolKind::Compound;
  throw std::invalid_argument("unknown symbol kind " + name);
}

void collect_all_symbols(const Term& t, std::map<std::string, Symbol>& out) {
  if (t.is_var()) return;
  out.emplace(t.root().name, t.root());
  for (const Term& c : t.args()) collect_all_symbols(c, out);
}

json signature_to_json(const std::map<std::string, Symbol>& symbols) {
  json out = json::array();
  for (const auto& [name, sym] : symbols) {
    out.push_back({{"name", sym.name}, {"arity", sym.arity}, {"kind", kind_name(sym.kind)}});
  }
  return out;
}

Term term_from_json(const json& j, const std::map<std::string, Symbol>& symbols) {
  if (j.contains("var")) return Term::var(j.at("var").get<std::string>());
  std::string name = j.at("sym").get<std::string>();
  auto it = symbols.find(name);
  if (it == symbols.end()) throw std::invalid_argument("term uses undeclared symbol " + name);
  std::vector<Term> args;
  for (const json& a : j.at("args")) args.push_back(term_from_json(a, symbols));
  return Term::app(it->second, std::move(args));
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(BigInt(s), 1);
  return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

json system_to_json(const Ptrs& r) {
  std::map<std::string, Symbol> symbols;
  for (const auto& [name, sym] : r.signature.symbols()) symbols.emplace(name, sym);
  json rules = json::array();
  for (const ProbRule& rule : r.rules) {
    json branches = json::array();
    for (const auto& b : rule.rhs.branches) {
      branches.push_back({{"prob", rat_to_string(b.prob)}, {"rhs", term_to_json(b.value)}});
    }
    rules.push_back({{"lhs", term_to_json(rule.lhs)}, {"branches", std::move(branches)}});
  }
  json vars = json::array();
  for (const std::string& v : r.signature.variables()) vars.push_back(v);
  return json{{"signature", signature_to_json(symbols)},
              {"variables", std::move(vars)},
              {"rules", std::move(rules)}};
}

Ptrs system_from_json(const json& j) {
  Ptrs r;
  std::map<std::string, Symbol> symbols;
  for (const json& s : j.at("signature")) {
    Symbol sym{s.at("name").get<std::string>(), s.at("arity").get<int>(),
               kind_from(s.at("kind").get<std::string>())};
    symbols.emplace(sym.name, sym);
    r.signature.add(sym);
  }
  for (const json& v : j.at("variables")) r.signature.add_variable(v.get<std::string>());
  for (const json& rule_json : j.at("rules")) {
    ProbRule rule;
    rule.lhs = term_from_json(rule_json.at("lhs"), symbols);
    for (const json& b : rule_json.at("branches")) {
      rule.rhs.branches.push_back(
          {rat_from_string(b.at("prob").get<std::string>()),
           term_from_json(b.at("rhs"), symbols)});
    }
    r.rules.push_back(std::move(rule));
  }
  return r;
}

json problem_to_json(const DpProblem& prob) {
  std::map<std::string, Symbol> symbols;
  for (const CoupledDt& dt : prob.pairs) {
    collect_all_symbols(dt.lhs_sharp, symbols);
    collect_all_symbols(dt.lhs_orig, symbols);
    for (const auto& b : dt.branches) {
      collect_all_symbols(b.dp, symbols);
      collect_all_symbols(b.rhs, symbols);
    }
  }
  json pairs = json::array();
  for (const CoupledDt& dt : prob.pairs) {
    json branches = json::array();
    for (const auto& b : dt.branches) {
      branches.push_back({{"prob", rat_to_string(b.prob)},
                          {"dp", term_to_json(b.dp)},
                          {"rhs", term_to_json(b.rhs)}});
    }
    pairs.push_back({{"lhs_sharp", term_to_json(dt.lhs_sharp)},
                     {"lhs_orig", term_to_json(dt.lhs_orig)},
                     {"branches", std::move(branches)}});
  }
  return json{{"sharp_signature", signature_to_json(symbols)},
              {"pairs", std::move(pairs)},
              {"system", system_to_json(prob.system)}};
}

DpProblem problem_from_json(const json& j) {
  DpProblem prob;
  prob.system = system_from_json(j.at("system"));
  std::map<std::string, Symbol> symbols;
  for (const json& s : j.at("sharp_signature")) {
    Symbol sym{s.at("name").get<std::string>(), s.at("arity").get<int>(),
               kind_from(s.at("kind").get<std::string>())};
    symbols.emplace(sym.name, sym);
  }
  for (const json& dt_json : j.at("pairs")) {
    CoupledDt dt;
    dt.lhs_sharp = term_from_json(dt_json.at("lhs_sharp"), symbols);
    dt.lhs_orig = term_from_json(dt_json.at("lhs_orig"), symbols);
    for (const json& b : dt_json.at("branches")) {
      dt.branches.push_back({rat_from_string(b.at("prob").get<std::string>()),
                             term_from_json(b.at("dp"), symbols),
                             term_from_json(b.at("rhs"), symbols)});
    }
    prob.pairs.push_back(std::move(dt));
  }
  return prob;
}

json interp_to_json(const PolyInterp& interp) {
  json out = json::array();
  for (const auto& [sym, poly] : interp.entries()) {
    json monos = json::array();
    for (const auto& [mono, coeff] : poly.monomials()) {
      json args = json::array();
      for (const std::string& v : mono) {
        // interpretation polynomials range over formal variables x1..xn
        args.push_back(std::stoi(v.substr(1)));
      }
      monos.push_back({{"coeff", rat_to_string(coeff)}, {"args", std::move(args)}});
    }
    out.push_back({{"symbol", sym}, {"poly", std::move(monos)}});
  }
  return out;
}

PolyInterp interp_from_json(const json& j) {
  PolyInterp interp;
  for (const json& entry : j) {
    Polynomial poly;
    for (const json& mono : entry.at("poly")) {
      Monomial m;
      for (const json& arg : mono.at("args")) m.push_back(formal_var(arg.get<int>()));
      poly.set(std::move(m), rat_from_string(mono.at("coeff").get<std::string>()));
    }
    interp.set(entry.at("symbol").get<std::string>(), std::move(poly));
  }
  return interp;
}

json node_to_json(const ProofNode& node) {
  json out;
  out["technique"] = to_string(node.technique);
  out["status"] = node.status == NodeStatus::Proven ? "proven" : "inconclusive";
  if (!node.reason.empty()) out["reason"] = node.reason;
  if (node.system) out["system"] = system_to_json(*node.system);
  if (node.problem) out["problem"] = problem_to_json(*node.problem);
  if (node.interp) out["interpretation"] = interp_to_json(*node.interp);
  if (!node.strict.empty()) out["strict"] = node.strict;
  if (node.graph) {
    json edges = json::array();
    for (const auto& [from, to] : node.graph->edges) edges.push_back({from, to});
    out["graph"] = {{"nodes", node.graph->node_count}, {"edges", std::move(edges)}};
    out["components"] = node.components;
  }
  json children = json::array();
  for (const ProofNode& child : node.children) children.push_back(node_to_json(child));
  out["children"] = std::move(children);
  return out;
}

Technique technique_from(const std::string& name) {
  for (Technique t : {Technique::Portfolio, Technique::ChainCriterion,
                      Technique::DgProcessor, Technique::RpProcessor,
                      Technique::DirectPoly, Technique::TrivialEmpty,
                      Technique::RuleRemoval, Technique::TermRemoval,
                      Technique::Prob1Conversion}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown technique " + name);
}

ProofNode node_from_json(const json& j) {
  ProofNode node;
  node.technique = technique_from(j.at("technique").get<std::string>());
  node.status = j.at("status").get<std::string>() == "proven" ? NodeStatus::Proven
                                                              : NodeStatus::Inconclusive;
  if (j.contains("reason")) node.reason = j.at("reason").get<std::string>();
  if (j.contains("system")) node.system = system_from_json(j.at("system"));
  if (j.contains("problem")) node.problem = problem_from_json(j.at("problem"));
  if (j.contains("interpretation")) node.interp = interp_from_json(j.at("interpretation"));
  if (j.contains("strict")) node.strict = j.at("strict").get<std::vector<int>>();
  if (j.contains("graph")) {
    DepGraph g;
    g.node_count = j.at("graph").at("nodes").get<int>();
    for (const json& e : j.at("graph").at("edges")) {
      g.edges.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    node.graph = std::move(g);
    node.components = j.at("components").get<std::vector<std::vector<int>>>();
  }
  for (const json& child : j.at("children")) node.children.push_back(node_from_json(child));
  return node;
}

}  // namespace

nlohmann::json proof_to_json(const Proof& proof) {
  json out;
  out["schema"] = proof.schema;
  out["verdict"] = to_string(proof.verdict);
  out["nf_filter"] = proof.nf_filter;
  out["maybe_reasons"] = proof.maybe_reasons;
  out["root"] = node_to_json(proof.root);
  return out;
}

Proof proof_from_json(const nlohmann::json& j) {
  Proof proof;
  proof.schema = j.at("schema").get<int>();
  std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "AST") proof.verdict = Verdict::Ast;
  else if (verdict == "iAST") proof.verdict = Verdict::IAst;
  else if (verdict == "MAYBE") proof.verdict = Verdict::Maybe;
  else throw std::invalid_argument("unknown verdict " + verdict);
  proof.nf_filter = j.value("nf_filter", false);
  if (j.contains("maybe_reasons")) {
    proof.maybe_reasons = j.at("maybe_reasons").get<std::vector<std::string>>();
  }
  proof.root = node_from_json(j.at("root"));
  return proof;
}

}  // namespace probterm
