// Random generators and independent reference implementations used as
// oracles by the test suites.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dedmod/core.hpp"
#include "dedmod/kernel.hpp"
#include "dedmod/theory.hpp"

namespace dtest {

using namespace dedmod;

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937 gen_;
};

/// Random sort-correct term of `sort`; variables drawn from `vars` when one
/// of the right sort exists.
Term random_term(Rng& rng, const Signature& sig, const Sort& sort, int depth, const std::vector<Var>& vars);
/// Random well-formed formula; quantifiers bind fresh names over the
/// signature's sorts and may shadow `vars`.
Prop random_prop(Rng& rng, const Signature& sig, int depth, std::vector<Var> vars);
/// Random substitution over `vars`.
Substitution random_subst(Rng& rng, const Signature& sig, const std::vector<Var>& vars, int depth,
                          const std::vector<Var>& range);

/// Locally nameless rendering: bound variables become binder distances,
/// free ones are replaced through `s` (or kept by name). Two formulas are
/// alpha-equal iff their renderings agree, and rendering after a
/// substitution must equal rendering through it.
std::string nameless(const Prop& p, const Substitution& s = {});
std::string nameless(const Term& t, const Substitution& s = {});

/// Leaves of a `+` tree, left to right: the associativity normal form is
/// determined by this sequence.
std::vector<std::string> plus_leaves(const Term& t);
/// Left comb over the leaves.
Term left_comb(const std::vector<Term>& leaves);
std::vector<Term> plus_leaf_terms(const Term& t);

Term numeral(int n);
/// Value of a closed 0/S/+ term by integer arithmetic.
std::optional<int> peano_value(const Term& t);

/// Classical truth-table validity of a quantifier-free formula built from
/// nullary atoms.
bool classically_valid(const Prop& p);

/// Every formula occurring as a conclusion in the proof.
std::vector<Prop> conclusions(const ProofTree& p);

Theory builtin(const std::string& name);
std::string read_text(const std::string& path);
std::string corpus(const std::string& rel);

}  // namespace dtest
