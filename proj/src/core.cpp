#include "dedmod/core.hpp"

#include <algorithm>
#include <sstream>

namespace dedmod {

// ---------------------------------------------------------------------------
// Term

Term Term::var(Var v) {
  auto n = std::make_shared<TermNode>();
  n->is_var = true;
  n->sort = v.sort;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::var(std::string name, Sort sort) { return var(Var{std::move(name), std::move(sort)}); }

Term Term::app(std::string fn, std::vector<Term> args, Sort sort) {
  auto n = std::make_shared<TermNode>();
  n->fn = std::move(fn);
  n->args = std::move(args);
  n->sort = std::move(sort);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }
const Var& Term::as_var() const { return node_->var; }
const std::string& Term::fn() const { return node_->fn; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Sort& Term::sort() const { return node_->sort; }

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args()) n += a.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.as_var() == b.as_var();
  if (a.fn() != b.fn() || a.sort() != b.sort() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

bool operator<(const Term& a, const Term& b) { return to_string(a) < to_string(b); }

// ---------------------------------------------------------------------------
// Prop

Prop Prop::atom(std::string pred, std::vector<Term> args) {
  auto n = std::make_shared<PropNode>();
  n->kind = Connective::Atom;
  n->pred = std::move(pred);
  n->args = std::move(args);
  return Prop(std::move(n));
}

Prop Prop::top() {
  static const Prop t = [] {
    auto n = std::make_shared<PropNode>();
    n->kind = Connective::Top;
    return Prop(std::move(n));
  }();
  return t;
}

Prop Prop::bottom() {
  static const Prop b = [] {
    auto n = std::make_shared<PropNode>();
    n->kind = Connective::Bottom;
    return Prop(std::move(n));
  }();
  return b;
}

Prop Prop::binary(Connective c, Prop a, Prop b) {
  auto n = std::make_shared<PropNode>();
  n->kind = c;
  n->left = std::move(a);
  n->right = std::move(b);
  return Prop(std::move(n));
}

Prop Prop::quantifier(Connective c, Var x, Prop body) {
  auto n = std::make_shared<PropNode>();
  n->kind = c;
  n->bound = std::move(x);
  n->left = std::move(body);
  return Prop(std::move(n));
}

Prop Prop::conj(Prop a, Prop b) { return binary(Connective::And, std::move(a), std::move(b)); }
Prop Prop::disj(Prop a, Prop b) { return binary(Connective::Or, std::move(a), std::move(b)); }
Prop Prop::imp(Prop a, Prop b) { return binary(Connective::Imp, std::move(a), std::move(b)); }
Prop Prop::neg(Prop a) { return imp(std::move(a), bottom()); }
Prop Prop::iff(Prop a, Prop b) { return conj(imp(a, b), imp(b, a)); }
Prop Prop::forall(Var x, Prop body) { return quantifier(Connective::Forall, std::move(x), std::move(body)); }
Prop Prop::exists(Var x, Prop body) { return quantifier(Connective::Exists, std::move(x), std::move(body)); }

Connective Prop::kind() const { return node_->kind; }
bool Prop::is_binary() const {
  auto k = kind();
  return k == Connective::And || k == Connective::Or || k == Connective::Imp;
}
bool Prop::is_quantifier() const {
  auto k = kind();
  return k == Connective::Forall || k == Connective::Exists;
}
const std::string& Prop::pred() const { return node_->pred; }
const std::vector<Term>& Prop::args() const { return node_->args; }
const Prop& Prop::left() const { return node_->left; }
const Prop& Prop::right() const { return node_->right; }
const Var& Prop::bound() const { return node_->bound; }
const Prop& Prop::body() const { return node_->left; }

bool operator==(const Prop& a, const Prop& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom:
      return a.pred() == b.pred() && a.args() == b.args();
    case Connective::Top:
    case Connective::Bottom:
      return true;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return a.left() == b.left() && a.right() == b.right();
    case Connective::Forall:
    case Connective::Exists:
      return a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::add_sort(const Sort& s) {
  if (sorts_.insert(s).second) sort_order_.push_back(s);
}

void Signature::add_function(const std::string& name, std::vector<Sort> args, Sort result) {
  if (functions_.contains(name) || predicates_.contains(name))
    throw SortError("duplicate symbol '" + name + "'");
  for (const auto& s : args)
    if (!has_sort(s)) throw SortError("undeclared sort '" + s + "' in declaration of '" + name + "'");
  if (!has_sort(result)) throw SortError("undeclared sort '" + result + "' in declaration of '" + name + "'");
  functions_.emplace(name, FunctionDecl{std::move(args), std::move(result)});
  function_order_.push_back(name);
}

void Signature::add_predicate(const std::string& name, std::vector<Sort> args) {
  if (functions_.contains(name) || predicates_.contains(name))
    throw SortError("duplicate symbol '" + name + "'");
  for (const auto& s : args)
    if (!has_sort(s)) throw SortError("undeclared sort '" + s + "' in declaration of '" + name + "'");
  predicates_.emplace(name, std::move(args));
  predicate_order_.push_back(name);
}

const FunctionDecl* Signature::function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

const std::vector<Sort>* Signature::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

Term Signature::apply(const std::string& fn, std::vector<Term> args) const {
  const auto* decl = function(fn);
  if (!decl) throw SortError("unknown function symbol '" + fn + "'");
  if (decl->args.size() != args.size())
    throw SortError("arity mismatch for '" + fn + "': expected " + std::to_string(decl->args.size()) +
                    ", got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i].sort() != decl->args[i])
      throw SortError("sort mismatch in argument " + std::to_string(i) + " of '" + fn + "'");
  return Term::app(fn, std::move(args), decl->result);
}

Prop Signature::atom(const std::string& pred, std::vector<Term> args) const {
  const auto* decl = predicate(pred);
  if (!decl) throw SortError("unknown predicate symbol '" + pred + "'");
  if (decl->size() != args.size())
    throw SortError("arity mismatch for '" + pred + "': expected " + std::to_string(decl->size()) +
                    ", got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i].sort() != (*decl)[i])
      throw SortError("sort mismatch in argument " + std::to_string(i) + " of '" + pred + "'");
  return Prop::atom(pred, std::move(args));
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.sort_order_ != b.sort_order_ || a.function_order_ != b.function_order_ ||
      a.predicate_order_ != b.predicate_order_ || a.predicates_ != b.predicates_)
    return false;
  for (const auto& [name, decl] : a.functions_) {
    const auto* other = b.function(name);
    if (!other || other->args != decl.args || other->result != decl.result) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

WellFormed fail_at(Position pos, std::string msg) { return WellFormed{false, std::move(pos), std::move(msg)}; }

WellFormed check_term(const Signature& sig, const Term& t, Position& pos) {
  if (t.is_var()) {
    if (!sig.has_sort(t.sort())) return fail_at(pos, "variable '" + t.as_var().name + "' has undeclared sort '" + t.sort() + "'");
    return {};
  }
  const auto* decl = sig.function(t.fn());
  if (!decl) {
    if (sig.predicate(t.fn())) return fail_at(pos, "predicate '" + t.fn() + "' used as a function");
    return fail_at(pos, "unknown function symbol '" + t.fn() + "'");
  }
  if (decl->args.size() != t.args().size())
    return fail_at(pos, "arity mismatch for '" + t.fn() + "': expected " + std::to_string(decl->args.size()) + ", got " +
                            std::to_string(t.args().size()));
  if (decl->result != t.sort()) return fail_at(pos, "sort mismatch: '" + t.fn() + "' returns " + decl->result);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    pos.push_back(i);
    if (auto r = check_term(sig, t.args()[i], pos); !r) return r;
    if (t.args()[i].sort() != decl->args[i])
      return fail_at(pos, "sort mismatch: argument of '" + t.fn() + "' expects " + decl->args[i] + ", got " +
                              t.args()[i].sort());
    pos.pop_back();
  }
  return {};
}

WellFormed check_prop(const Signature& sig, const Prop& p, Position& pos) {
  switch (p.kind()) {
    case Connective::Atom: {
      const auto* decl = sig.predicate(p.pred());
      if (!decl) {
        if (sig.function(p.pred())) return fail_at(pos, "function '" + p.pred() + "' used as a predicate");
        return fail_at(pos, "unknown predicate symbol '" + p.pred() + "'");
      }
      if (decl->size() != p.args().size())
        return fail_at(pos, "arity mismatch for '" + p.pred() + "': expected " + std::to_string(decl->size()) + ", got " +
                                std::to_string(p.args().size()));
      for (std::size_t i = 0; i < p.args().size(); ++i) {
        pos.push_back(i);
        if (auto r = check_term(sig, p.args()[i], pos); !r) return r;
        if (p.args()[i].sort() != (*decl)[i])
          return fail_at(pos, "sort mismatch: argument of '" + p.pred() + "' expects " + (*decl)[i] + ", got " +
                                  p.args()[i].sort());
        pos.pop_back();
      }
      return {};
    }
    case Connective::Top:
    case Connective::Bottom:
      return {};
    case Connective::And:
    case Connective::Or:
    case Connective::Imp: {
      pos.push_back(0);
      if (auto r = check_prop(sig, p.left(), pos); !r) return r;
      pos.back() = 1;
      if (auto r = check_prop(sig, p.right(), pos); !r) return r;
      pos.pop_back();
      return {};
    }
    case Connective::Forall:
    case Connective::Exists: {
      if (!sig.has_sort(p.bound().sort))
        return fail_at(pos, "binder '" + p.bound().name + "' has undeclared sort '" + p.bound().sort + "'");
      pos.push_back(0);
      if (auto r = check_prop(sig, p.body(), pos); !r) return r;
      pos.pop_back();
      return {};
    }
  }
  return {};
}

}  // namespace

WellFormed wellformed(const Signature& sig, const Term& t) {
  Position pos;
  return check_term(sig, t, pos);
}

WellFormed wellformed(const Signature& sig, const Prop& p) {
  Position pos;
  return check_prop(sig, p, pos);
}

// ---------------------------------------------------------------------------
// Variables

void collect_vars(const Term& t, std::set<Var>& out) {
  if (t.is_var()) {
    out.insert(t.as_var());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

std::set<Var> free_vars(const Term& t) {
  std::set<Var> out;
  collect_vars(t, out);
  return out;
}

namespace {

void free_vars_into(const Prop& p, std::set<Var>& out) {
  switch (p.kind()) {
    case Connective::Atom:
      for (const auto& a : p.args()) collect_vars(a, out);
      return;
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      free_vars_into(p.left(), out);
      free_vars_into(p.right(), out);
      return;
    case Connective::Forall:
    case Connective::Exists: {
      std::set<Var> inner;
      free_vars_into(p.body(), inner);
      inner.erase(p.bound());
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

}  // namespace

std::set<Var> free_vars(const Prop& p) {
  std::set<Var> out;
  free_vars_into(p, out);
  return out;
}

std::set<Var> free_vars(const Expr& e) {
  return std::visit([](const auto& x) { return free_vars(x); }, e);
}

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.as_var().name);
    return;
  }
  for (const auto& a : t.args()) collect_names(a, out);
}

void collect_names(const Prop& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case Connective::Atom:
      for (const auto& a : p.args()) collect_names(a, out);
      return;
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      collect_names(p.left(), out);
      collect_names(p.right(), out);
      return;
    case Connective::Forall:
    case Connective::Exists:
      out.insert(p.bound().name);
      collect_names(p.body(), out);
      return;
  }
}

bool occurs(const Var& v, const Term& t) {
  if (t.is_var()) return t.as_var() == v;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs(v, a); });
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  // Strip an existing numeric suffix so repeated renaming does not stack.
  std::string stem = base;
  if (auto us = stem.rfind('_'); us != std::string::npos && us + 1 < stem.size() &&
                                 std::all_of(stem.begin() + static_cast<long>(us) + 1, stem.end(),
                                             [](char c) { return c >= '0' && c <= '9'; }))
    stem.resize(us);
  if (stem.empty()) stem = "v";
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

Var fresh_var(const Var& base, const std::set<std::string>& taken) { return Var{fresh_name(base.name, taken), base.sort}; }

// ---------------------------------------------------------------------------
// Substitution

void Substitution::bind(const Var& v, const Term& t) {
  if (v.sort != t.sort())
    throw SortError("sort mismatch: variable " + v.name + ":" + v.sort + " bound to term " + to_string(t) + " of sort " +
                    t.sort());
  if (t.is_var() && t.as_var() == v) {
    map_.erase(v);
    return;
  }
  map_.insert_or_assign(v, t);
}

const Term* Substitution::lookup(const Var& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (map_.empty()) return t;
  if (t.is_var()) {
    const Term* r = lookup(t.as_var());
    return r ? *r : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.fn(), std::move(args), t.sort()) : t;
}

Prop Substitution::apply(const Prop& p) const {
  if (map_.empty()) return p;
  switch (p.kind()) {
    case Connective::Atom: {
      if (p.args().empty()) return p;
      std::vector<Term> args;
      for (const auto& a : p.args()) args.push_back(apply(a));
      return Prop::atom(p.pred(), std::move(args));
    }
    case Connective::Top:
    case Connective::Bottom:
      return p;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return Prop::binary(p.kind(), apply(p.left()), apply(p.right()));
    case Connective::Forall:
    case Connective::Exists: {
      const Var& x = p.bound();
      Substitution inner;
      std::set<Var> body_free = free_vars(p.body());
      std::set<Var> range;
      for (const auto& [v, t] : map_) {
        if (v == x || !body_free.contains(v)) continue;
        inner.map_.emplace(v, t);
        collect_vars(t, range);
      }
      if (inner.empty()) return p;
      Var bound = x;
      if (range.contains(x)) {
        std::set<std::string> taken;
        collect_names(p.body(), taken);
        for (const auto& v : range) taken.insert(v.name);
        for (const auto& [v, t] : inner.map_) taken.insert(v.name);
        taken.insert(x.name);
        bound = fresh_var(x, taken);
        inner.map_.emplace(x, Term::var(bound));
      }
      return Prop::quantifier(p.kind(), bound, inner.apply(p.body()));
    }
  }
  return p;
}

Expr Substitution::apply(const Expr& e) const {
  return std::visit([this](const auto& x) -> Expr { return apply(x); }, e);
}

Substitution Substitution::after(const Substitution& first) const {
  Substitution out;
  for (const auto& [v, t] : first.map_) {
    Term applied = apply(t);
    if (!(applied.is_var() && applied.as_var() == v)) out.map_.insert_or_assign(v, applied);
  }
  for (const auto& [v, t] : map_)
    if (!first.map_.contains(v)) out.map_.emplace(v, t);
  return out;
}

Substitution Substitution::restricted(const std::set<Var>& vars) const {
  Substitution out;
  for (const auto& [v, t] : map_)
    if (vars.contains(v)) out.map_.emplace(v, t);
  return out;
}

std::set<Var> Substitution::range_vars() const {
  std::set<Var> out;
  for (const auto& [v, t] : map_) collect_vars(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

using Scope = std::vector<Var>;

// Index of the innermost binder of v, or -1 when free.
long binder_index(const Scope& scope, const Var& v) {
  for (long i = static_cast<long>(scope.size()) - 1; i >= 0; --i)
    if (scope[static_cast<std::size_t>(i)] == v) return i;
  return -1;
}

bool term_alpha(const Term& a, const Term& b, const Scope& sa, const Scope& sb) {
  if (a.is_var() || b.is_var()) {
    if (!a.is_var() || !b.is_var()) return false;
    long ia = binder_index(sa, a.as_var());
    long ib = binder_index(sb, b.as_var());
    if (ia != ib) return false;
    return ia >= 0 || a.as_var() == b.as_var();
  }
  if (a.fn() != b.fn() || a.args().size() != b.args().size() || a.sort() != b.sort()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!term_alpha(a.args()[i], b.args()[i], sa, sb)) return false;
  return true;
}

bool prop_alpha(const Prop& a, const Prop& b, Scope& sa, Scope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom:
      if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!term_alpha(a.args()[i], b.args()[i], sa, sb)) return false;
      return true;
    case Connective::Top:
    case Connective::Bottom:
      return true;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return prop_alpha(a.left(), b.left(), sa, sb) && prop_alpha(a.right(), b.right(), sa, sb);
    case Connective::Forall:
    case Connective::Exists: {
      if (a.bound().sort != b.bound().sort) return false;
      sa.push_back(a.bound());
      sb.push_back(b.bound());
      bool r = prop_alpha(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Prop& a, const Prop& b) {
  if (a == b) return true;
  Scope sa, sb;
  return prop_alpha(a, b, sa, sb);
}

bool alpha_eq(const Expr& a, const Expr& b) {
  if (a.index() != b.index()) return false;
  if (const auto* t = std::get_if<Term>(&a)) return *t == std::get<Term>(b);
  return alpha_eq(std::get<Prop>(a), std::get<Prop>(b));
}

// ---------------------------------------------------------------------------
// Positions

Term subterm(const Term& t, const Position& p) {
  Term cur = t;
  for (std::size_t i : p) {
    if (cur.is_var() || i >= cur.args().size()) throw Error("invalid term position " + to_string(p));
    cur = cur.args()[i];
  }
  return cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t k, const Term& by) {
  if (k == p.size()) return by;
  if (t.is_var() || p[k] >= t.args().size()) throw Error("invalid term position " + to_string(p));
  std::vector<Term> args = t.args();
  args[p[k]] = replace_from(args[p[k]], p, k + 1, by);
  return Term::app(t.fn(), std::move(args), t.sort());
}

Prop replace_prop_from(const Prop& p, const Position& pos, std::size_t k, const Expr& by) {
  if (k == pos.size()) {
    if (const auto* q = std::get_if<Prop>(&by)) return *q;
    throw Error("cannot place a term at proposition position " + to_string(pos));
  }
  std::size_t i = pos[k];
  switch (p.kind()) {
    case Connective::Atom: {
      if (i >= p.args().size()) break;
      const auto* t = std::get_if<Term>(&by);
      if (!t) throw Error("cannot place a proposition inside an atom at " + to_string(pos));
      std::vector<Term> args = p.args();
      args[i] = replace_from(args[i], pos, k + 1, *t);
      return Prop::atom(p.pred(), std::move(args));
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      if (i == 0) return Prop::binary(p.kind(), replace_prop_from(p.left(), pos, k + 1, by), p.right());
      if (i == 1) return Prop::binary(p.kind(), p.left(), replace_prop_from(p.right(), pos, k + 1, by));
      break;
    case Connective::Forall:
    case Connective::Exists:
      if (i == 0) return Prop::quantifier(p.kind(), p.bound(), replace_prop_from(p.body(), pos, k + 1, by));
      break;
    default:
      break;
  }
  throw Error("invalid proposition position " + to_string(pos));
}

}  // namespace

Term replace(const Term& t, const Position& p, const Term& by) { return replace_from(t, p, 0, by); }

Expr subexpr(const Prop& p, const Position& pos) {
  Prop cur = p;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    std::size_t i = pos[k];
    switch (cur.kind()) {
      case Connective::Atom: {
        if (i >= cur.args().size()) throw Error("invalid proposition position " + to_string(pos));
        Position rest(pos.begin() + static_cast<long>(k) + 1, pos.end());
        return subterm(cur.args()[i], rest);
      }
      case Connective::And:
      case Connective::Or:
      case Connective::Imp:
        if (i > 1) throw Error("invalid proposition position " + to_string(pos));
        cur = i == 0 ? cur.left() : cur.right();
        break;
      case Connective::Forall:
      case Connective::Exists:
        if (i != 0) throw Error("invalid proposition position " + to_string(pos));
        cur = cur.body();
        break;
      default:
        throw Error("invalid proposition position " + to_string(pos));
    }
  }
  return cur;
}

Prop replace(const Prop& p, const Position& pos, const Expr& by) { return replace_prop_from(p, pos, 0, by); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(std::ostream& os, const Term& t, bool annotate) {
  if (t.is_var()) {
    os << t.as_var().name;
    if (annotate) os << ':' << t.sort();
    return;
  }
  if (t.args().empty()) {
    os << t.fn();
    return;
  }
  os << '(' << t.fn();
  for (const auto& a : t.args()) {
    os << ' ';
    print_term(os, a, annotate);
  }
  os << ')';
}

const char* keyword(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::Imp: return "imp";
    case Connective::Forall: return "forall";
    case Connective::Exists: return "exists";
    case Connective::Top: return "top";
    case Connective::Bottom: return "bot";
    case Connective::Atom: return "";
  }
  return "";
}

void print_prop(std::ostream& os, const Prop& p) {
  switch (p.kind()) {
    case Connective::Atom:
      if (p.args().empty()) {
        os << p.pred();
        return;
      }
      os << '(' << p.pred();
      for (const auto& a : p.args()) {
        os << ' ';
        print_term(os, a, false);
      }
      os << ')';
      return;
    case Connective::Top:
    case Connective::Bottom:
      os << keyword(p.kind());
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      os << '(' << keyword(p.kind()) << ' ';
      print_prop(os, p.left());
      os << ' ';
      print_prop(os, p.right());
      os << ')';
      return;
    case Connective::Forall:
    case Connective::Exists:
      os << '(' << keyword(p.kind()) << ' ' << p.bound().name << ':' << p.bound().sort << ' ';
      print_prop(os, p.body());
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t, false);
  return os.str();
}

std::string to_string_annotated(const Term& t) {
  std::ostringstream os;
  print_term(os, t, true);
  return os.str();
}

std::string to_string(const Prop& p) {
  std::ostringstream os;
  print_prop(os, p);
  return os.str();
}

std::string to_string(const Expr& e) {
  return std::visit([](const auto& x) { return to_string(x); }, e);
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v.name + " := " + to_string(t);
  }
  return out + "}";
}

std::string to_string(const Position& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out + "]";
}

std::string to_string(const Var& v) { return v.name + ":" + v.sort; }

}  // namespace dedmod
