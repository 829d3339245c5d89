#pragma once

#include "depgraph.hpp"
#include "dp.hpp"
#include "polynomial.hpp"
#include "ptrs.hpp"
#include "synthesis.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace probterm {

enum class Verdict { Ast, IAst, Maybe };

std::string to_string(Verdict v);

/// Applied proof techniques. RuleRemoval, TermRemoval and Prob1Conversion
/// are reserved tags for processors this prover does not produce yet; they
/// keep the proof format forward-compatible.
enum class Technique {
  Portfolio,
  ChainCriterion,
  DgProcessor,
  RpProcessor,
  DirectPoly,
  TrivialEmpty,
  RuleRemoval,
  TermRemoval,
  Prob1Conversion,
};

std::string to_string(Technique t);

enum class NodeStatus { Proven, Inconclusive };

struct ProofNode {
  Technique technique = Technique::TrivialEmpty;
  NodeStatus status = NodeStatus::Inconclusive;
  std::string reason;  // for inconclusive nodes: why the search gave up

  std::optional<Ptrs> system;       // ChainCriterion / DirectPoly input
  std::optional<DpProblem> problem; // DP-framework nodes

  std::optional<PolyInterp> interp;          // RpProcessor / DirectPoly
  std::vector<int> strict;                   // P_> (0-based pair indices)
  std::optional<DepGraph> graph;             // DgProcessor
  std::vector<std::vector<int>> components;  // DgProcessor SCCs

  std::vector<ProofNode> children;
};

struct Proof {
  int schema = 1;
  Verdict verdict = Verdict::Maybe;
  bool nf_filter = false;  // dependency graph estimation flag used
  std::vector<std::string> maybe_reasons;
  ProofNode root;
};

enum class TechniqueChoice { Auto, Dp, Direct };
enum class OutputFormat { Text, Json };

struct ProverConfig {
  TechniqueChoice technique = TechniqueChoice::Auto;
  int max_coeff = 4;
  bool full_multilinear = false;
  int timeout_ms = 8000;
  bool nf_filter = false;
  std::uint64_t max_nodes = 5'000'000;
  OutputFormat format = OutputFormat::Text;
};

/// Proof pipeline: dependency tuples, dependency graph decomposition, then a
/// reduction-pair loop per SCC; the direct criterion runs afterwards to
/// upgrade iAST to AST (or alone with technique=Direct). MAYBE never claims
/// non-termination.
Proof prove(const Ptrs& r, const ProverConfig& config = {});

/// Re-validates every certificate in the proof against its stored problem
/// snapshot and the processors' contracts.
bool check_proof(const Ptrs& r, const Proof& proof, std::string* why = nullptr);

std::string render_text(const Proof& proof);
std::string render(const Proof& proof, OutputFormat format);

nlohmann::json proof_to_json(const Proof& proof);
Proof proof_from_json(const nlohmann::json& j);

}  // namespace probterm
