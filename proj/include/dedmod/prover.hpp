// Bounded cut-free proof search modulo a congruence.
//
// Goal-directed intuitionistic search: introduction rules on the goal,
// elimination chains on hypotheses, branches closed when a hypothesis is
// congruent to the goal. Witnesses are metavariables solved by unification
// modulo the rewrite system.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dedmod/kernel.hpp"
#include "dedmod/theory.hpp"
#include "dedmod/unify.hpp"

namespace dedmod {

class UnvalidatedTheory : public Error {
 public:
  using Error::Error;
};

enum class SearchStatus {
  Proved,
  /// The bounded search space was explored completely without a proof.
  Fail,
  /// No proof found, and some branch was cut off by the bound.
  BoundExceeded,
};

const char* to_string(SearchStatus s);

struct SearchStats {
  std::size_t nodes_expanded = 0;
  std::size_t narrowing_calls = 0;
  /// Candidate proofs the kernel refused; always zero unless the search is buggy.
  std::size_t rejected = 0;
};

struct SearchOptions {
  std::size_t fuel = kDefaultFuel;
  std::size_t narrowing_depth = kDefaultNarrowingDepth;
  std::size_t solution_cap = 4;
  /// Hard cap on expanded nodes; reaching it reports BoundExceeded.
  std::size_t node_limit = 2000000;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Fail;
  /// With Proved: a kernel-checked, cut-free, fully annotated proof.
  std::optional<ProofTree> proof;
  SearchStats stats;
  std::string note;

  bool proved() const { return status == SearchStatus::Proved; }
};

/// `depth` bounds the number of rule applications on each branch. Throws
/// UnvalidatedTheory unless the theory was validated and is non-confusing,
/// and Error on an ill-formed goal.
SearchOutcome search_proof(const Theory& theory, const Sequent& goal, std::size_t depth, SearchOptions options = {});

/// Searches for a proof of bottom from `hypotheses`. Fail means consistent
/// at this depth.
SearchOutcome consistency_probe(const Theory& theory, std::size_t depth, std::vector<Hypothesis> hypotheses = {},
                                SearchOptions options = {});

}  // namespace dedmod
