#pragma once

#include "ptrs.hpp"
#include "simulator.hpp"
#include "term.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace probterm::testing {

inline Ptrs load_corpus(const std::string& name) {
  std::ifstream in(std::string(PROBTERM_CORPUS_DIR) + "/" + name + ".ptrs");
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ptrs(buffer.str());
}

// Seeded generator of random terms over a small fixed signature; used by the
// property suites.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  Term term(int max_depth) {
    if (max_depth == 0 || rng_.below(4) == 0) {
      return leaf();
    }
    switch (rng_.below(3)) {
      case 0: return Term::app(unary_, {term(max_depth - 1)});
      case 1: return Term::app(binary_, {term(max_depth - 1), term(max_depth - 1)});
      default: return leaf();
    }
  }

  Term ground_term(int max_depth) {
    if (max_depth == 0 || rng_.below(3) == 0) {
      return Term::app(constant_);
    }
    if (rng_.below(2) == 0) {
      return Term::app(unary_, {ground_term(max_depth - 1)});
    }
    return Term::app(binary_, {ground_term(max_depth - 1), ground_term(max_depth - 1)});
  }

  std::uint64_t below(std::uint64_t n) { return rng_.below(n); }

 private:
  Term leaf() {
    switch (rng_.below(3)) {
      case 0: return Term::var("x");
      case 1: return Term::var("y");
      default: return Term::app(constant_);
    }
  }

  SplitMix64 rng_;
  Symbol constant_{"a", 0, SymbolKind::Constructor};
  Symbol unary_{"g", 1, SymbolKind::Constructor};
  Symbol binary_{"f", 2, SymbolKind::Constructor};
};

}  // namespace probterm::testing
