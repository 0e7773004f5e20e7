// Constructive natural deduction modulo a congruence: proof checking, cut
// detection, cut reduction and bounded proof normalization.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dedmod/core.hpp"
#include "dedmod/rewrite.hpp"
#include "dedmod/theory.hpp"

namespace dedmod {

enum class RuleTag {
  Axiom,
  TopIntro,
  BottomElim,
  AndIntro,
  AndElimLeft,
  AndElimRight,
  OrIntroLeft,
  OrIntroRight,
  OrElim,
  ImpIntro,
  ImpElim,
  ForallIntro,
  ForallElim,
  ExistsIntro,
  ExistsElim,
};

/// Text form used by the proof syntax, e.g. "imp_i".
const char* tag_name(RuleTag tag);
std::optional<RuleTag> tag_from_name(const std::string& name);
bool is_introduction(RuleTag tag);
bool is_elimination(RuleTag tag);

/// Shape of a rule: how many children, hypothesis labels, and which payload.
struct RuleShape {
  std::size_t children;
  std::size_t labels;
  bool witness;
  bool eigenvariable;
};
RuleShape shape_of(RuleTag tag);

struct ProofNode;

/// Immutable natural-deduction derivation. Conclusions are optional in input
/// trees; checking returns a copy with every conclusion filled in.
class ProofTree {
 public:
  ProofTree() = default;

  /// Throws Error when the payload or child count does not fit the tag.
  static ProofTree make(RuleTag tag, std::vector<ProofTree> children = {}, std::vector<std::string> labels = {},
                        std::optional<Term> witness = std::nullopt, std::optional<Var> eigenvariable = std::nullopt,
                        std::optional<Prop> conclusion = std::nullopt);

  bool valid() const { return node_ != nullptr; }
  RuleTag tag() const;
  const std::optional<Prop>& conclusion() const;
  const std::vector<std::string>& labels() const;
  const std::optional<Term>& witness() const;
  const std::optional<Var>& eigenvariable() const;
  const std::vector<ProofTree>& children() const;
  std::size_t size() const;

  ProofTree with_conclusion(std::optional<Prop> c) const;
  ProofTree with_children(std::vector<ProofTree> children) const;
  ProofTree with_labels(std::vector<std::string> labels) const;
  ProofTree with_payload(std::optional<Term> witness, std::optional<Var> eigenvariable) const;

  /// Structural equality, formulas compared up to bound renaming.
  friend bool operator==(const ProofTree& a, const ProofTree& b);

 private:
  explicit ProofTree(std::shared_ptr<const ProofNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ProofNode> node_;
};

struct ProofNode {
  RuleTag tag = RuleTag::Axiom;
  std::optional<Prop> conclusion;
  std::vector<std::string> labels;
  std::optional<Term> witness;
  std::optional<Var> eigenvariable;
  std::vector<ProofTree> children;
};

ProofTree subproof(const ProofTree& p, const Position& pos);
ProofTree replace_subproof(const ProofTree& p, const Position& pos, const ProofTree& by);

struct Hypothesis {
  std::string label;
  Prop formula;
};

struct Sequent {
  std::vector<Hypothesis> context;
  Prop conclusion;
};

std::string to_string(const Sequent& s);

enum class CheckErrorKind {
  None,
  RuleMismatch,
  UnknownHypothesis,
  CongruenceFailure,
  EigenvariableViolation,
  MissingConclusion,
  IllFormed,
  FuelExhausted,
};

struct CheckResult {
  bool ok = false;
  CheckErrorKind error = CheckErrorKind::None;
  Position failing_node;
  std::string message;
  /// With ok set: the input tree with every conclusion filled in.
  ProofTree elaborated;

  explicit operator bool() const { return ok; }
};

/// Checks `proof` against `goal`. Formula side conditions are decided with
/// the congruence of the theory; eigenvariable conditions are checked on
/// normal forms when those are reachable within fuel.
CheckResult check_proof(const Theory& theory, const ProofTree& proof, const Sequent& goal,
                        std::size_t fuel = kDefaultFuel);

struct Cut {
  Position position;
  RuleTag intro;
  RuleTag elim;
};

/// Every elimination whose major premise is the matching introduction, in
/// post-order (the first entry is the leftmost-innermost cut).
std::vector<Cut> find_cuts(const Theory& theory, const ProofTree& proof, std::size_t fuel = kDefaultFuel);

/// One proof reduction at `position`; throws Error when it is not a cut.
ProofTree reduce_cut(const Theory& theory, const ProofTree& proof, const Position& position);

/// Commuting conversion: an elimination applied to the conclusion of or_e or
/// exists_e moves into the branches. Position must name the outer
/// elimination.
ProofTree commute_conversion(const ProofTree& proof, const Position& position);
std::vector<Position> find_commuting_redexes(const ProofTree& proof);

struct NormalizeOptions {
  /// Also apply commuting conversions (not counted as cuts).
  bool commuting = false;
};

struct ProofNormalization {
  std::optional<ProofTree> proof;
  std::size_t steps = 0;

  bool exhausted() const { return !proof.has_value(); }
};

/// Reduces the leftmost-innermost cut until none remain or `fuel` reductions
/// have been spent.
ProofNormalization normalize_proof(const Theory& theory, const ProofTree& proof, std::size_t fuel = kDefaultFuel,
                                   NormalizeOptions options = {});

/// Root rule is an introduction (a fold counts as one).
bool ends_with_intro(const ProofTree& proof);

struct IffConversion {
  RewriteRule rule;
  /// The head predicate occurs in its own definition.
  bool self_referential = false;
};

/// Turns universally closed equivalences `Atom <=> Body` into proposition
/// rules `Atom ~> Body`, named `<prefix>1`, `<prefix>2`, ...
std::vector<IffConversion> iff_axioms_to_rules(const std::vector<Prop>& axioms, const std::string& prefix = "ax");

/// Hypothesis labels used but not bound inside the proof.
std::set<std::string> free_labels(const ProofTree& proof);
/// Replaces free `axiom label` leaves by `by`, renaming inner binders that
/// would capture labels free in `by`.
ProofTree substitute_hypothesis(const ProofTree& proof, const std::string& label, const ProofTree& by);
/// Applies a term substitution to every formula and witness of the proof,
/// renaming inner eigenvariables that clash with the substituted terms.
ProofTree substitute_terms(const ProofTree& proof, const Substitution& s);
/// Every variable name occurring in the proof.
std::set<std::string> proof_names(const ProofTree& proof);

}  // namespace dedmod
