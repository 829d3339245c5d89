#include "simulator.hpp"

#include <algorithm>
#include <limits>

namespace probterm {

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t threshold = -n % n;  // 2^64 mod n
  while (true) {
    std::uint64_t v = next();
    if (v >= threshold) return v % n;
  }
}

namespace {

// The leftmost of the innermost redexes: smallest position lexicographically,
// lowest rule index as tie-break. innermost_redexes returns depth-first
// preorder positions, which is already lexicographic, so the first entry works.
const Redex* leftmost(const std::vector<Redex>& redexes) {
  return redexes.empty() ? nullptr : &redexes.front();
}

}  // namespace

std::vector<LeafMass> expand_exact_trace(const Term& start, const Ptrs& r, int depth,
                                         const SimLimits& limits) {
  struct Entry {
    Rat prob;
    Term term;
  };
  std::vector<Entry> frontier{{Rat(1), start}};
  Rat leaf_mass = 0;

  std::vector<LeafMass> trace;
  auto settle = [&](int level) {
    // move normal forms out of the frontier
    std::vector<Entry> remaining;
    for (Entry& e : frontier) {
      if (is_normal_form(e.term, r)) {
        leaf_mass += e.prob;
      } else {
        remaining.push_back(std::move(e));
      }
    }
    frontier = std::move(remaining);
    trace.push_back({leaf_mass, level, frontier.empty()});
  };

  settle(0);
  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<Entry> next;
    for (const Entry& e : frontier) {
      std::vector<Redex> redexes = innermost_redexes(e.term, r);
      const Redex* redex = leftmost(redexes);
      MultiDist<Term> step = rewrite_innermost(e.term, redex->pos, redex->rule_index, r);
      for (const auto& branch : step.branches) {
        next.push_back({e.prob * branch.prob, branch.value});
      }
    }
    frontier = std::move(next);
    if (frontier.size() > limits.node_budget) {
      LeafMass partial{leaf_mass, level, false};
      throw FrontierBudgetExceeded(partial);
    }
    settle(level);
  }
  // pad when the frontier emptied early: deeper levels add no mass
  while (static_cast<int>(trace.size()) <= depth) {
    trace.push_back({leaf_mass, static_cast<int>(trace.size()), true});
  }
  return trace;
}

LeafMass expand_exact(const Term& start, const Ptrs& r, int depth,
                      const SimLimits& limits) {
  return expand_exact_trace(start, r, depth, limits).back();
}

namespace {

// Per-branch cumulative thresholds scaled to the 64-bit draw range: branch j
// is chosen for draws below ceil(F_j * 2^64), which realizes the exact
// comparison draw / 2^64 < F_j. The final threshold is a catch-all.
std::vector<std::vector<std::uint64_t>> branch_thresholds(const Ptrs& r) {
  const BigInt two64 = BigInt(1) << 64;
  std::vector<std::vector<std::uint64_t>> out;
  for (const ProbRule& rule : r.rules) {
    std::vector<std::uint64_t> thresholds;
    Rat cumulative = 0;
    for (const auto& branch : rule.rhs.branches) {
      cumulative += branch.prob;
      BigInt scaled = (numerator(cumulative) * two64 + denominator(cumulative) - 1) /
                      denominator(cumulative);
      thresholds.push_back(scaled >= two64
                               ? std::numeric_limits<std::uint64_t>::max()
                               : scaled.convert_to<std::uint64_t>());
    }
    if (!thresholds.empty()) {
      thresholds.back() = std::numeric_limits<std::uint64_t>::max();
    }
    out.push_back(std::move(thresholds));
  }
  return out;
}

}  // namespace

RunResult sample_run(const Term& start, const Ptrs& r, int max_steps,
                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<std::uint64_t>> thresholds = branch_thresholds(r);
  Term current = start;
  for (int step = 0; step < max_steps; ++step) {
    std::vector<Redex> redexes = innermost_redexes(current, r);
    if (redexes.empty()) return {true, step};
    const Redex& redex = redexes[rng.below(redexes.size())];

    const ProbRule& rule = r.rules[redex.rule_index];
    std::uint64_t draw = rng.next();
    const std::vector<std::uint64_t>& cuts = thresholds[redex.rule_index];
    std::size_t branch = 0;
    while (branch + 1 < cuts.size() && draw >= cuts[branch]) ++branch;

    // the redex came from innermost_redexes, so the match cannot fail
    auto sigma = match(rule.lhs, subterm_at(current, redex.pos));
    current = replace_at(current, redex.pos,
                         sigma->apply(rule.rhs.branches[branch].value));
  }
  return {innermost_redexes(current, r).empty(), max_steps};
}

Rat estimate_ast(const Term& start, const Ptrs& r, int samples, int max_steps,
                 std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("estimate_ast: samples must be >= 1");
  long terminated = 0;
  for (int i = 0; i < samples; ++i) {
    // derived per-sample seed: one splitmix step from seed + i
    std::uint64_t sample_seed = SplitMix64(seed + static_cast<std::uint64_t>(i)).next();
    if (sample_run(start, r, max_steps, sample_seed).terminated) ++terminated;
  }
  return Rat(terminated, samples);
}

}  // namespace probterm
