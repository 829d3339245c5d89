// probterm: prover and simulator for almost-sure termination of
// probabilistic term rewrite systems.
//
// Exit codes: 0 = property proven (or simulation/check succeeded),
//             1 = inconclusive (MAYBE) or invalid proof,
//             2 = usage, parse, or I/O error.

#include "prover.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <glob.h>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace probterm;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Ptrs load_system(const std::string& path) {
  Ptrs system = parse_ptrs(read_file(path));
  std::vector<Diagnostic> diags = validate(system);
  if (!diags.empty()) {
    std::ostringstream msg;
    msg << path << ": invalid system:";
    for (const Diagnostic& d : diags) {
      msg << "\n  rule " << (d.rule_index + 1) << ": " << d.message;
    }
    throw std::runtime_error(msg.str());
  }
  return system;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t results;
  std::vector<std::string> paths;
  if (glob(pattern.c_str(), 0, nullptr, &results) == 0) {
    for (std::size_t i = 0; i < results.gl_pathc; ++i) {
      paths.emplace_back(results.gl_pathv[i]);
    }
  }
  globfree(&results);
  return paths;
}

struct ProveArgs {
  std::vector<std::string> files;
  std::string glob_pattern;
  std::string technique = "auto";
  int max_coeff = 4;
  bool full_multilinear = false;
  int timeout_ms = 0;  // 0: default / environment
  bool emit_graph = false;
  std::string emit_smtlib;
  std::string format = "text";
  bool nf_filter = false;
};

int default_timeout_ms() {
  if (const char* env = std::getenv("PROBTERM_TIMEOUT_MS")) {
    int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 8000;
}

int run_prove(const ProveArgs& args) {
  ProverConfig config;
  if (args.technique == "auto") config.technique = TechniqueChoice::Auto;
  else if (args.technique == "dp") config.technique = TechniqueChoice::Dp;
  else if (args.technique == "direct") config.technique = TechniqueChoice::Direct;
  else throw std::runtime_error("unknown technique " + args.technique);
  config.max_coeff = args.max_coeff;
  config.full_multilinear = args.full_multilinear;
  config.timeout_ms = args.timeout_ms >= 1 ? args.timeout_ms : default_timeout_ms();
  config.nf_filter = args.nf_filter;
  config.format = args.format == "json" ? OutputFormat::Json : OutputFormat::Text;

  std::vector<std::string> files = args.files;
  if (!args.glob_pattern.empty()) {
    for (std::string& p : expand_glob(args.glob_pattern)) files.push_back(std::move(p));
  }
  if (files.empty()) throw std::runtime_error("no input files");

  bool all_proven = true;
  for (const std::string& path : files) {
    Ptrs system = load_system(path);

    if (!args.emit_smtlib.empty()) {
      TemplateOptions opts;
      opts.full_multilinear = config.full_multilinear;
      std::ofstream out(args.emit_smtlib);
      if (!out) throw std::runtime_error("cannot write " + args.emit_smtlib);
      out << export_smtlib(direct_constraints(system, opts));
    }

    Proof proof = prove(system, config);

    if (files.size() > 1 && config.format == OutputFormat::Text) {
      std::cout << path << ":\n";
    }
    if (args.emit_graph && config.format == OutputFormat::Text) {
      DpProblem prob = dependency_tuples(system);
      DepGraph graph = build_graph(prob, config.nf_filter);
      std::cout << graph_lines(graph) << graph_dot(graph, prob);
    }
    std::cout << render(proof, config.format);
    all_proven = all_proven && proof.verdict != Verdict::Maybe;
  }
  return all_proven ? 0 : 1;
}

struct SimulateArgs {
  std::string file;
  std::string start;
  int depth = 8;
  int samples = 0;
  int max_steps = 10000;
  std::uint64_t seed = 1;
  std::string csv;
};

int run_simulate(const SimulateArgs& args) {
  Ptrs system = load_system(args.file);
  Term start = parse_term(args.start, system);

  if (args.depth >= 0) {
    try {
      std::vector<LeafMass> trace = expand_exact_trace(start, system, args.depth);
      const LeafMass& final_mass = trace.back();
      std::cout << "leaf mass " << rat_to_string(final_mass.value)
                << (final_mass.exhausted ? " (exhausted)" : "") << " at depth "
                << final_mass.depth << "\n";
      if (!args.csv.empty()) {
        std::ofstream out(args.csv);
        if (!out) throw std::runtime_error("cannot write " + args.csv);
        out << "depth,leaf_mass_num,leaf_mass_den\n";
        for (const LeafMass& m : trace) {
          out << m.depth << "," << numerator(m.value) << "," << denominator(m.value)
              << "\n";
        }
      }
    } catch (const FrontierBudgetExceeded& e) {
      std::cout << "exact expansion aborted: " << e.what() << "; partial leaf mass "
                << rat_to_string(e.partial.value) << "\n";
    }
  }

  if (args.samples > 0) {
    Rat fraction = estimate_ast(start, system, args.samples, args.max_steps, args.seed);
    Rat count = fraction * args.samples;
    std::cout << "terminated " << numerator(count) << "/" << args.samples
              << " runs (fraction " << rat_to_string(fraction) << ", seed " << args.seed
              << ", max steps " << args.max_steps << ")\n";
  }
  return 0;
}

int run_check(const std::string& system_path, const std::string& proof_path) {
  Ptrs system = load_system(system_path);
  nlohmann::json j = nlohmann::json::parse(read_file(proof_path));
  Proof proof = proof_from_json(j);
  std::string why;
  if (check_proof(system, proof, &why)) {
    std::cout << "proof OK: " << to_string(proof.verdict) << "\n";
    return 0;
  }
  std::cout << "proof INVALID: " << why << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probterm: almost-sure termination prover for probabilistic TRSs"};
  app.require_subcommand(1);

  ProveArgs prove_args;
  CLI::App* prove_cmd = app.add_subcommand("prove", "prove (i)AST of a system");
  prove_cmd->add_option("files", prove_args.files, "input .ptrs files");
  prove_cmd->add_option("--glob", prove_args.glob_pattern, "glob pattern of input files");
  prove_cmd->add_option("--technique", prove_args.technique, "auto | dp | direct")
      ->check(CLI::IsMember({"auto", "dp", "direct"}));
  prove_cmd->add_option("--max-coeff", prove_args.max_coeff, "coefficient bound (default 4)")
      ->check(CLI::PositiveNumber);
  prove_cmd->add_flag("--full-multilinear", prove_args.full_multilinear,
                      "multilinear templates for arities <= 3");
  prove_cmd->add_option("--timeout-ms", prove_args.timeout_ms,
                        "timeout (default 8000, or PROBTERM_TIMEOUT_MS)");
  prove_cmd->add_flag("--emit-graph", prove_args.emit_graph,
                      "print the dependency graph (edges and DOT)");
  prove_cmd->add_option("--emit-smtlib", prove_args.emit_smtlib,
                        "write direct-criterion constraints as SMT-LIB 2");
  prove_cmd->add_option("--format", prove_args.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  prove_cmd->add_flag("--nf-filter", prove_args.nf_filter,
                      "normal-form filtering in the dependency graph estimation");

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "rewrite-tree simulation");
  sim_cmd->add_option("file", sim_args.file, "input .ptrs file")->required();
  sim_cmd->add_option("--start", sim_args.start, "start term")->required();
  sim_cmd->add_option("--depth", sim_args.depth, "exact expansion depth (default 8)");
  sim_cmd->add_option("--samples", sim_args.samples, "Monte Carlo sample count");
  sim_cmd->add_option("--max-steps", sim_args.max_steps, "steps per sample (default 10000)");
  sim_cmd->add_option("--seed", sim_args.seed, "PRNG seed (default 1)");
  sim_cmd->add_option("--csv", sim_args.csv, "write per-depth leaf mass CSV");

  std::string check_system, check_proof_path;
  CLI::App* check_cmd = app.add_subcommand("check", "re-validate a JSON proof");
  check_cmd->add_option("system", check_system, "input .ptrs file")->required();
  check_cmd->add_option("proof", check_proof_path, "proof JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove_cmd->parsed()) return run_prove(prove_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (check_cmd->parsed()) return run_check(check_system, check_proof_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
