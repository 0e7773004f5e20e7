// A theory: a signature together with the rewrite system that replaces its
// axioms, and the verdicts of the latest validation run.

#pragma once

#include <string>
#include <vector>

#include "dedmod/core.hpp"
#include "dedmod/rewrite.hpp"

namespace dedmod {

struct ValidationReport {
  bool ran = false;
  bool non_confusing = false;
  std::size_t critical_pairs = 0;
  bool locally_confluent = false;
  /// Printed witnesses of non-joinable or undecided critical pairs.
  std::vector<std::string> confluence_failures;
  std::vector<std::string> confluence_unknowns;
  TerminationEvidence termination = TerminationEvidence::Unknown;
  std::vector<std::string> unoriented;
  /// Proposition rules whose head predicate occurs in their own rhs.
  std::vector<std::string> self_referential;
  std::vector<std::string> annotations;

  /// Stable multi-line rendering.
  std::string to_string() const;
};

struct Theory {
  std::string name;
  Signature signature;
  RewriteSystem rules;
  /// Set by `assert terminating.` in a theory file.
  bool asserted_terminating = false;
  /// Known facts attached to a builtin, e.g. a known failure of cut elimination.
  std::vector<std::string> annotations;
  ValidationReport report;

  /// Validation has run and found the system non-confusing.
  bool validated() const { return report.ran && report.non_confusing; }
};

/// Same signature, same rules (up to renaming of bound variables), same
/// assertions.
bool same_theory(const Theory& a, const Theory& b);

}  // namespace dedmod
