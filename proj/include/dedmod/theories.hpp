// Builtin theories, the validation pipeline and congruence-closed
// sub-formula sets.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dedmod/core.hpp"
#include "dedmod/rewrite.hpp"
#include "dedmod/theory.hpp"

namespace dedmod {

const std::vector<std::string>& builtin_names();
/// Text of a builtin in the theory file format; throws Error for an unknown name.
const std::string& builtin_source(const std::string& name);
/// Parsed and validated builtin.
Theory load_builtin(const std::string& name);

/// Later declarations rank higher; predicates rank above functions.
std::vector<std::string> default_precedence(const Signature& sig);

/// Runs every check and records the verdicts; never rejects.
const ValidationReport& validate_theory(Theory& theory, std::size_t fuel = kDefaultFuel);

enum class ClosureStatus {
  Closed,
  TruncatedAtFuel,
  /// Quantifier bodies were abstracted with placeholders: the set stands for
  /// infinitely many instances.
  InfiniteSchematic,
};

const char* to_string(ClosureStatus s);

struct SubformulaClass {
  Prop representative;
  std::vector<Prop> members;
};

/// Sub-formulas grouped into congruence classes, in discovery order.
/// Placeholders standing for arbitrary terms print as `•`, `•2`, ...
struct SubformulaSet {
  std::vector<SubformulaClass> classes;
  ClosureStatus status = ClosureStatus::Closed;

  std::size_t size() const { return classes.size(); }
  /// Some class member equals `p` up to instantiating placeholders, or is
  /// congruent to it.
  bool contains(const RewriteSystem& R, const Prop& p, std::size_t fuel = kDefaultFuel) const;
};

bool is_placeholder(const Var& v);

SubformulaSet subformula_closure(const Theory& theory, const Prop& a, std::size_t fuel = kDefaultFuel);

}  // namespace dedmod
