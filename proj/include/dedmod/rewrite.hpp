// The congruence engine: oriented rules, matching, normalization, critical
// pairs and the confluence / termination / non-confusion checks.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dedmod/core.hpp"

namespace dedmod {

class RuleError : public Error {
 public:
  using Error::Error;
};

/// Raised internally when a step budget runs out; public entry points turn it
/// into an explicit outcome.
class FuelExhausted : public Error {
 public:
  FuelExhausted() : Error("fuel exhausted") {}
};

inline constexpr std::size_t kDefaultFuel = 10000;

enum class RuleKind { Term, Prop };

/// An oriented rule. Term rules have a non-variable lhs; proposition rules
/// have an atomic lhs. Free variables of the rhs are among those of the lhs.
class RewriteRule {
 public:
  static RewriteRule term_rule(std::string name, Term lhs, Term rhs);
  static RewriteRule prop_rule(std::string name, Prop lhs, Prop rhs);

  const std::string& name() const { return name_; }
  RuleKind kind() const { return kind_; }
  Expr lhs() const;
  Expr rhs() const;
  const Term& term_lhs() const { return term_lhs_; }
  const Term& term_rhs() const { return term_rhs_; }
  const Prop& prop_lhs() const { return prop_lhs_; }
  const Prop& prop_rhs() const { return prop_rhs_; }
  /// Symbol at the root of the lhs (function or predicate).
  const std::string& head() const;
  std::set<Var> variables() const;

  /// Same rule with its variables renamed away from `taken`; the new names are
  /// added to `taken`.
  RewriteRule renamed_apart(std::set<std::string>& taken) const;

  friend bool operator==(const RewriteRule&, const RewriteRule&);

 private:
  std::string name_;
  RuleKind kind_ = RuleKind::Term;
  Term term_lhs_, term_rhs_;
  Prop prop_lhs_, prop_rhs_;
};

std::string to_string(const RewriteRule& r);

enum class TerminationEvidence { Unknown, Lpo, UserAsserted };

struct SystemFlags {
  TerminationEvidence termination = TerminationEvidence::Unknown;
  bool locally_confluent = false;
  bool non_confusing = false;

  bool terminating() const { return termination != TerminationEvidence::Unknown; }
  /// Terminating and locally confluent: normal forms decide the congruence.
  bool convergent() const { return terminating() && locally_confluent; }
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  explicit RewriteSystem(std::vector<RewriteRule> rules);

  /// Throws RuleError on a duplicate name.
  void add(RewriteRule r);
  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  const RewriteRule* find(const std::string& name) const;
  bool has_prop_rules_for(const std::string& pred) const;
  /// True when some term rule has `fn` at the root of its lhs.
  bool defines(const std::string& fn) const;

  SystemFlags& flags() { return flags_; }
  const SystemFlags& flags() const { return flags_; }
  void assert_terminating() { flags_.termination = TerminationEvidence::UserAsserted; }

 private:
  std::vector<RewriteRule> rules_;
  SystemFlags flags_;
};

/// Step budget shared by a computation.
class Fuel {
 public:
  explicit Fuel(std::size_t budget) : remaining_(budget) {}
  /// Throws FuelExhausted when empty.
  void consume();
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return remaining_; }

 private:
  std::size_t remaining_;
  std::size_t used_ = 0;
};

// ---------------------------------------------------------------------------
// Matching and one-step rewriting

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject);
std::optional<Substitution> match_pattern(const Prop& pattern, const Prop& subject);

struct Redex {
  Position position;
  std::string rule;
  /// The whole expression after contracting this redex.
  Expr reduct;
};

/// Every redex at every position, in pre-order, rules in system order.
std::vector<Redex> rewrite_positions(const RewriteSystem& R, const Expr& x);

// ---------------------------------------------------------------------------
// Normalization

template <class X>
struct Normalized {
  std::optional<X> value;
  std::size_t steps = 0;

  bool exhausted() const { return !value.has_value(); }
};

/// Leftmost-innermost normalization within `fuel` rewrite steps.
Normalized<Term> normalize(const RewriteSystem& R, const Term& t, std::size_t fuel = kDefaultFuel);
Normalized<Prop> normalize(const RewriteSystem& R, const Prop& p, std::size_t fuel = kDefaultFuel);
Normalized<Expr> normalize(const RewriteSystem& R, const Expr& x, std::size_t fuel = kDefaultFuel);

/// Picks one redex among the candidates (always non-empty).
using RedexChooser = std::function<std::size_t(const std::vector<Redex>&)>;

/// Normalization under an arbitrary strategy; used to test strategy independence.
Normalized<Expr> normalize_with(const RewriteSystem& R, const Expr& x, const RedexChooser& choose,
                                std::size_t fuel = kDefaultFuel);

// Building blocks that throw FuelExhausted; used by the kernel and the prover.
Term normal_form(const RewriteSystem& R, const Term& t, Fuel& fuel);
Prop normal_form(const RewriteSystem& R, const Prop& p, Fuel& fuel);
/// Rewrites at the root of atoms until the head is a connective or a rigid atom.
Prop head_normal_form(const RewriteSystem& R, const Prop& p, Fuel& fuel);

// ---------------------------------------------------------------------------
// Congruence

enum class CongruenceVerdict { Congruent, NotCongruent, FuelExhausted };

struct Congruence {
  CongruenceVerdict verdict = CongruenceVerdict::NotCongruent;
  /// False when the system is not known to be terminating and confluent; the
  /// answer then comes from a bounded heuristic.
  bool trusted = false;
  std::string lhs_normal;
  std::string rhs_normal;

  bool congruent() const { return verdict == CongruenceVerdict::Congruent; }
};

Congruence congruent(const RewriteSystem& R, const Expr& a, const Expr& b, std::size_t fuel = kDefaultFuel);

/// Memoizing congruence decision for one checking or search session. Keys are
/// canonical printed forms. Not thread-safe; one session per thread.
class CongruenceSession {
 public:
  CongruenceSession(const RewriteSystem& R, std::size_t fuel);

  /// Throws FuelExhausted when a single question runs out of steps.
  bool congruent(const Prop& a, const Prop& b);
  bool congruent(const Term& a, const Term& b);
  Prop head_normal(const Prop& p);
  /// Full normal form when reachable within the budget.
  std::optional<Prop> try_normal(const Prop& p);
  const RewriteSystem& system() const { return R_; }
  std::size_t fuel() const { return fuel_; }

 private:
  bool congruent_props(const Prop& a, const Prop& b, Fuel& fuel);
  bool congruent_terms(const Term& a, const Term& b, Fuel& fuel);

  const RewriteSystem& R_;
  std::size_t fuel_;
  std::unordered_map<std::string, bool> memo_;
  std::unordered_map<std::string, Prop> head_memo_;
  std::unordered_map<std::string, std::optional<Prop>> normal_memo_;
};

// ---------------------------------------------------------------------------
// Critical pairs and checks

enum class Joinability { Unchecked, Yes, No, UnknownAtFuel };

struct CriticalPair {
  std::string outer_rule;
  std::string inner_rule;
  Position position;
  Expr peak;
  /// Contracting the outer rule at the root of the peak.
  Expr outer_reduct;
  /// Contracting the inner rule at `position`.
  Expr inner_reduct;
  Joinability joinable = Joinability::Unchecked;
};

std::vector<CriticalPair> critical_pairs(const RewriteSystem& R);

struct ConfluenceReport {
  std::vector<CriticalPair> joinable;
  std::vector<CriticalPair> failures;
  std::vector<CriticalPair> unknowns;

  bool locally_confluent() const { return failures.empty() && unknowns.empty(); }
};

/// Sets the locally-confluent flag iff every critical pair joins within fuel.
ConfluenceReport check_local_confluence(RewriteSystem& R, std::size_t fuel = kDefaultFuel);

/// Order in which equal-headed argument lists are compared.
enum class LexStatus { LeftToRight, RightToLeft };

/// Lexicographic path order, strict. `precedence` lists symbols greatest first;
/// connectives rank below every listed symbol and bound variables below those.
bool lpo_greater(const Expr& s, const Expr& t, const std::vector<std::string>& precedence,
                 LexStatus status = LexStatus::LeftToRight);

struct TerminationReport {
  bool terminating = false;
  std::vector<std::string> unoriented;
  LexStatus status = LexStatus::LeftToRight;
};

/// Sets asserted-terminating (LPO evidence) when every rule has lhs > rhs,
/// with one lexicographic status shared by all symbols (left-to-right tried
/// first).
TerminationReport check_termination_lpo(RewriteSystem& R, const std::vector<std::string>& precedence);

/// Every proposition rule lhs is an atom and every term rule lhs a term.
bool check_nonconfusing(RewriteSystem& R);

}  // namespace dedmod
