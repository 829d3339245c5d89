#pragma once

#include "ptrs.hpp"
#include "rational.hpp"

#include <cstdint>
#include <vector>

namespace probterm {

/// Portable splitmix64 generator: state advances by the 64-bit golden ratio
/// 0x9e3779b97f4a7c15 and each output is finalized with the standard
/// 30/27/31-shift mixing constants 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb.
/// Identical sequences on every platform for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased uniform value in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

struct LeafMass {
  Rat value;        // total probability of normal-form leaves reached
  int depth = 0;
  bool exhausted = false;  // frontier empty: the tree is finite
};

struct SimLimits {
  std::uint64_t node_budget = 1'000'000;  // max live frontier entries
};

struct FrontierBudgetExceeded : std::runtime_error {
  LeafMass partial;
  explicit FrontierBudgetExceeded(LeafMass partial)
      : std::runtime_error("frontier node budget exceeded at depth " +
                           std::to_string(partial.depth)),
        partial(std::move(partial)) {}
};

/// Exact tree expansion, one leftmost-innermost step per level (position
/// nondeterminism resolved to the leftmost innermost redex, rule
/// nondeterminism to the first matching rule). Index d of the result is the
/// leaf mass after d levels; the final entry is the requested depth.
std::vector<LeafMass> expand_exact_trace(const Term& start, const Ptrs& r, int depth,
                                         const SimLimits& limits = {});

LeafMass expand_exact(const Term& start, const Ptrs& r, int depth,
                      const SimLimits& limits = {});

struct RunResult {
  bool terminated = false;
  int steps = 0;
};

/// One random rewrite sequence: innermost redexes are picked uniformly,
/// branches according to their probability; deterministic for a given seed.
RunResult sample_run(const Term& start, const Ptrs& r, int max_steps,
                     std::uint64_t seed);

/// Fraction of runs that reached a normal form within max_steps. Sample i
/// uses the seed stream split at seed + i.
Rat estimate_ast(const Term& start, const Ptrs& r, int samples, int max_steps,
                 std::uint64_t seed);

}  // namespace probterm
