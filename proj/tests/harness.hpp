// Randomized and corpus-driven suites. Each returns a tally so that the unit
// tests can assert on it and the acceptance runner can report it.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dtest {

struct Tally {
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  /// Free-form counters shown in reports, e.g. how many goals were proved.
  std::vector<std::pair<std::string, std::size_t>> notes;

  void record(bool ok, const std::string& what);
  void note(const std::string& key, std::size_t value) { notes.emplace_back(key, value); }
  bool ok() const { return cases > 0 && passed == cases; }
  std::string summary() const;
};

Tally substitution_suite(std::size_t n, unsigned seed);
Tally alpha_suite(std::size_t n, unsigned seed);
/// Normal forms under leftmost-innermost and random redex choice agree, and
/// match the arithmetic and flattening oracles where they apply.
Tally strategy_suite(std::size_t n, unsigned seed);
/// Congruence is an equivalence and survives wrapping in a random context.
Tally congruence_suite(std::size_t n, unsigned seed);
Tally addition_suite(int max);

/// Every emitted solution is re-verified; a case is one solution.
Tally narrowing_soundness_suite(std::size_t problems, unsigned seed);
/// Associative problems against brute-force leaf enumeration.
Tally narrowing_completeness_suite(std::size_t problems, unsigned seed);
/// Empty system: narrowing returns a variant of the syntactic mgu.
Tally narrowing_syntactic_suite(std::size_t n, unsigned seed);

/// Prover outputs with cuts grafted in; reductions must preserve the sequent.
Tally subject_preservation_suite(std::size_t n, unsigned seed);

/// The fixed goal corpus for P ~> A /\ B.
const std::vector<std::string>& definitional_goals();
/// Depth at which search from equivalence hypotheses matches search modulo
/// the rules at `depth`: using an equivalence costs three extra rule
/// applications (split the conjunction, apply the implication, close its
/// premise).
std::size_t axiom_depth(std::size_t depth, std::size_t definitions);
/// Provable modulo the rule at `depth` iff provable from the equivalence at
/// the matched depth, exactly.
Tally fold_unfold_corpus_suite(std::size_t depth);
/// Random single definitions D ~> body: a proof modulo at `depth` reappears
/// from the equivalence at the matched depth, and a proof from the
/// equivalence there reappears modulo.
Tally fold_unfold_random_suite(std::size_t n, unsigned seed, std::size_t depth);
/// Goals needing at most one associativity step at the top of P: the same
/// two-way check against the axiom as a hypothesis.
const std::vector<std::string>& associative_goals();
Tally associative_agreement_suite(std::size_t depth, std::size_t axiom_bound);

/// Closed disjunctions proved over the builtins end with a disjunction
/// introduction whose premise proves the chosen disjunct.
Tally disjunction_suite(std::size_t depth);

/// Propositional goals the prover proves are classically valid; proofs check
/// and are cut-free; provability is monotone in the depth.
Tally prover_soundness_suite(std::size_t n, unsigned seed, std::size_t depth);
/// Every formula in a prover proof over P ~> A /\ B lies in the congruence
/// closed sub-formula set of the goal.
Tally subformula_property_suite(std::size_t depth);

}  // namespace dtest
