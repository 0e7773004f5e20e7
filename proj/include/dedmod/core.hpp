// Many-sorted first-order syntax: terms, propositions, substitutions and
// well-formedness against a signature.
//
// Terms and propositions are immutable handles onto shared nodes; copying
// them is cheap and they may be shared freely between threads.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dedmod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public Error {
 public:
  using Error::Error;
};

using Sort = std::string;

struct Var {
  std::string name;
  Sort sort;

  auto operator<=>(const Var&) const = default;
};

struct TermNode;

class Term {
 public:
  Term() = default;

  static Term var(Var v);
  static Term var(std::string name, Sort sort);
  static Term app(std::string fn, std::vector<Term> args, Sort sort);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  const Var& as_var() const;
  /// Function symbol of an application.
  const std::string& fn() const;
  const std::vector<Term>& args() const;
  const Sort& sort() const;
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  bool is_var = false;
  Var var;
  std::string fn;
  std::vector<Term> args;
  Sort sort;
};

enum class Connective { Atom, Top, Bottom, And, Or, Imp, Forall, Exists };

struct PropNode;

class Prop {
 public:
  Prop() = default;

  static Prop atom(std::string pred, std::vector<Term> args = {});
  static Prop top();
  static Prop bottom();
  static Prop conj(Prop a, Prop b);
  static Prop disj(Prop a, Prop b);
  static Prop imp(Prop a, Prop b);
  /// Notation for a => bottom.
  static Prop neg(Prop a);
  /// Notation for (a => b) /\ (b => a).
  static Prop iff(Prop a, Prop b);
  static Prop forall(Var x, Prop body);
  static Prop exists(Var x, Prop body);
  static Prop binary(Connective c, Prop a, Prop b);
  static Prop quantifier(Connective c, Var x, Prop body);

  bool valid() const { return node_ != nullptr; }
  Connective kind() const;
  bool is_atom() const { return kind() == Connective::Atom; }
  bool is_binary() const;
  bool is_quantifier() const;

  const std::string& pred() const;
  const std::vector<Term>& args() const;
  const Prop& left() const;
  const Prop& right() const;
  const Var& bound() const;
  const Prop& body() const;

  friend bool operator==(const Prop& a, const Prop& b);

 private:
  explicit Prop(std::shared_ptr<const PropNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const PropNode> node_;
};

struct PropNode {
  Connective kind = Connective::Top;
  std::string pred;
  std::vector<Term> args;
  Prop left, right;
  Var bound;
};

/// A term or a proposition; the unit most operations accept.
using Expr = std::variant<Term, Prop>;

/// Path of child indices. Binary connectives number their operands 0 and 1,
/// quantifiers their body 0, atoms and applications their arguments from 0.
using Position = std::vector<std::size_t>;

struct FunctionDecl {
  std::vector<Sort> args;
  Sort result;
};

class Signature {
 public:
  void add_sort(const Sort& s);
  void add_function(const std::string& name, std::vector<Sort> args, Sort result);
  void add_predicate(const std::string& name, std::vector<Sort> args);

  bool has_sort(const Sort& s) const { return sorts_.contains(s); }
  const FunctionDecl* function(const std::string& name) const;
  const std::vector<Sort>* predicate(const std::string& name) const;
  bool is_function(const std::string& name) const { return function(name) != nullptr; }

  /// Declaration order is kept; it seeds the default LPO precedence.
  const std::vector<Sort>& sorts() const { return sort_order_; }
  const std::vector<std::string>& functions() const { return function_order_; }
  const std::vector<std::string>& predicates() const { return predicate_order_; }

  /// Builds a sort-checked application.
  Term apply(const std::string& fn, std::vector<Term> args) const;
  Prop atom(const std::string& pred, std::vector<Term> args = {}) const;

  friend bool operator==(const Signature&, const Signature&);

 private:
  std::set<Sort> sorts_;
  std::vector<Sort> sort_order_;
  std::map<std::string, FunctionDecl> functions_;
  std::vector<std::string> function_order_;
  std::map<std::string, std::vector<Sort>> predicates_;
  std::vector<std::string> predicate_order_;
};

struct WellFormed {
  bool ok = true;
  Position position;
  std::string message;

  explicit operator bool() const { return ok; }
};

WellFormed wellformed(const Signature& sig, const Term& t);
WellFormed wellformed(const Signature& sig, const Prop& p);

/// Finite, sort-preserving map from variables to terms.
class Substitution {
 public:
  Substitution() = default;

  /// Throws SortError when the term's sort differs from the variable's.
  void bind(const Var& v, const Term& t);
  const Term* lookup(const Var& v) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Var, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;
  /// Simultaneous, capture-avoiding substitution.
  Prop apply(const Prop& p) const;
  Expr apply(const Expr& e) const;

  /// Returns the substitution equivalent to applying `first`, then `*this`.
  Substitution after(const Substitution& first) const;
  Substitution restricted(const std::set<Var>& vars) const;
  std::set<Var> range_vars() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Var, Term> map_;
};

std::set<Var> free_vars(const Term& t);
std::set<Var> free_vars(const Prop& p);
std::set<Var> free_vars(const Expr& e);
void collect_vars(const Term& t, std::set<Var>& out);
/// Every variable name occurring in p, bound or free.
void collect_names(const Prop& p, std::set<std::string>& out);
void collect_names(const Term& t, std::set<std::string>& out);
bool occurs(const Var& v, const Term& t);

/// Deterministic fresh name: `base_1`, `base_2`, ... skipping taken names.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);
Var fresh_var(const Var& base, const std::set<std::string>& taken);

bool alpha_eq(const Prop& a, const Prop& b);
bool alpha_eq(const Expr& a, const Expr& b);

// Positions.
Term subterm(const Term& t, const Position& p);
Term replace(const Term& t, const Position& p, const Term& by);
/// Sub-expression of a proposition: a Prop, or a Term once the path enters an atom.
Expr subexpr(const Prop& p, const Position& pos);
Prop replace(const Prop& p, const Position& pos, const Expr& by);

// Canonical printing: fully parenthesized prefix form, sorts on binders only.
std::string to_string(const Term& t);
std::string to_string(const Prop& p);
std::string to_string(const Expr& e);
std::string to_string(const Substitution& s);
std::string to_string(const Position& p);
std::string to_string(const Var& v);

/// Prints every variable as `name:sort`, so the text parses back without a
/// sort-inference context (witness terms in proofs).
std::string to_string_annotated(const Term& t);

}  // namespace dedmod
