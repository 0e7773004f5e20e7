// Text formats: theory files, formulas, proofs and goal files.
//
// Terms and formulas use the canonical prefix form of the printer. A bare
// identifier is a constant when the signature declares it, otherwise a
// variable whose sort comes from its argument position or an explicit
// `name:sort` annotation.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "dedmod/core.hpp"
#include "dedmod/kernel.hpp"
#include "dedmod/theory.hpp"

namespace dedmod {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

Term parse_term(const Signature& sig, std::string_view text);
Prop parse_prop(const Signature& sig, std::string_view text);
/// A formula when the text starts with a predicate or connective, else a term.
Expr parse_expr(const Signature& sig, std::string_view text);

/// Theory file grammar, one declaration per item:
///   sort <id>.   func <id> : <sorts> -> <sort>.   pred <id> : <sorts>.
///   rule <id>: <lhs> ~> <rhs>.   assert terminating.
/// `#` starts a comment running to the end of the line.
Theory parse_theory(std::string_view text, std::string name = "");
std::string print_theory(const Theory& theory);

/// `(tag [conclusion] "label"... payload child...)`; the bracketed conclusion
/// is optional, the payload is a witness term or an `x:sort` eigenvariable.
ProofTree parse_proof(const Signature& sig, std::string_view text);
std::string print_proof(const ProofTree& proof);
/// Indented multi-line rendering.
std::string print_proof_pretty(const ProofTree& proof);

/// Goal file: `hyp <label>: <formula>.` lines followed by `goal <formula>.`
Sequent parse_goal(const Signature& sig, std::string_view text);
std::string print_goal(const Sequent& goal);

}  // namespace dedmod
