// Syntactic unification and unification modulo a rewrite system by narrowing.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dedmod/core.hpp"
#include "dedmod/rewrite.hpp"

namespace dedmod {

using TermEquation = std::pair<Term, Term>;

/// Most general unifier with occurs check. Variables in `rigid` behave as
/// constants.
std::optional<Substitution> unify_syntactic(const Term& a, const Term& b, const std::set<Var>& rigid = {});
/// Atoms unify argument-wise under equal predicates; connectives are
/// decomposed; quantified formulas only unify when alpha-equal and closed
/// over the unifiable variables.
std::optional<Substitution> unify_syntactic(const Prop& a, const Prop& b, const std::set<Var>& rigid = {});
std::optional<Substitution> unify_syntactic(const Expr& a, const Expr& b, const std::set<Var>& rigid = {});
std::optional<Substitution> unify_all(const std::vector<TermEquation>& eqs, const std::set<Var>& rigid = {});

struct UnificationProblem {
  /// Terms, or atoms with the same predicate symbol.
  std::vector<std::pair<Expr, Expr>> pairs;
  const RewriteSystem* system = nullptr;
  /// Variables that may not be instantiated.
  std::set<Var> rigid;
};

enum class StreamStatus {
  /// The narrowing space was explored completely.
  SearchSpaceExhausted,
  /// Every state up to the depth bound was explored; deeper ones remain.
  CompleteAtBound,
  /// The solution cap was reached before the frontier was explored.
  CapReached,
};

struct SolutionStream {
  std::vector<Substitution> solutions;
  StreamStatus status = StreamStatus::SearchSpaceExhausted;
  std::size_t states_explored = 0;

  bool bound_exceeded() const { return status != StreamStatus::SearchSpaceExhausted; }
};

inline constexpr std::size_t kDefaultNarrowingDepth = 8;
inline constexpr std::size_t kDefaultSolutionCap = 16;

/// Breadth-first normalized narrowing. Every emitted substitution is checked
/// with the congruence before it is emitted; solutions equal up to renaming
/// of the auxiliary variables are reported once.
SolutionStream narrow_unify(const UnificationProblem& problem, std::size_t depth = kDefaultNarrowingDepth,
                            std::size_t cap = kDefaultSolutionCap, std::size_t fuel = kDefaultFuel);

}  // namespace dedmod
