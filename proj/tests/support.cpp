#include "support.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "dedmod/theories.hpp"

namespace dtest {

Term random_term(Rng& rng, const Signature& sig, const Sort& sort, int depth, const std::vector<Var>& vars) {
  std::vector<Var> vs;
  for (const auto& v : vars)
    if (v.sort == sort) vs.push_back(v);
  std::vector<std::string> leaves, nodes;
  for (const auto& f : sig.functions()) {
    const FunctionDecl* d = sig.function(f);
    if (d->result != sort) continue;
    (d->args.empty() ? leaves : nodes).push_back(f);
  }
  bool leaf = depth <= 0 || nodes.empty() || rng.chance(0.35);
  if (leaf) {
    if (!vs.empty() && (leaves.empty() || rng.chance(0.5))) return Term::var(rng.pick(vs));
    if (!leaves.empty()) return sig.apply(rng.pick(leaves), {});
  }
  if (nodes.empty()) return Term::var(vs.empty() ? Var{"v", sort} : rng.pick(vs));
  const std::string& f = rng.pick(nodes);
  std::vector<Term> args;
  for (const auto& s : sig.function(f)->args) args.push_back(random_term(rng, sig, s, depth - 1, vars));
  return sig.apply(f, std::move(args));
}

Prop random_prop(Rng& rng, const Signature& sig, int depth, std::vector<Var> vars) {
  static const std::vector<std::string> names = {"x", "y", "z"};
  if (depth <= 0 || rng.chance(0.25)) {
    if (sig.predicates().empty() || rng.chance(0.05)) return rng.chance(0.5) ? Prop::top() : Prop::bottom();
    const std::string& p = rng.pick(sig.predicates());
    std::vector<Term> args;
    for (const auto& s : *sig.predicate(p)) args.push_back(random_term(rng, sig, s, 2, vars));
    return sig.atom(p, std::move(args));
  }
  switch (rng.below(6)) {
    case 0: return Prop::conj(random_prop(rng, sig, depth - 1, vars), random_prop(rng, sig, depth - 1, vars));
    case 1: return Prop::disj(random_prop(rng, sig, depth - 1, vars), random_prop(rng, sig, depth - 1, vars));
    case 2: return Prop::imp(random_prop(rng, sig, depth - 1, vars), random_prop(rng, sig, depth - 1, vars));
    default: {
      if (sig.sorts().empty()) return Prop::imp(random_prop(rng, sig, depth - 1, vars), Prop::bottom());
      Var x{rng.pick(names), rng.pick(sig.sorts())};
      vars.push_back(x);
      Prop body = random_prop(rng, sig, depth - 1, vars);
      return rng.chance(0.5) ? Prop::forall(x, body) : Prop::exists(x, body);
    }
  }
}

Substitution random_subst(Rng& rng, const Signature& sig, const std::vector<Var>& vars, int depth,
                          const std::vector<Var>& range) {
  Substitution s;
  for (const auto& v : vars)
    if (rng.chance(0.7)) s.bind(v, random_term(rng, sig, v.sort, depth, range));
  return s;
}

namespace {

std::string nameless_term(const Term& t, const std::vector<Var>& bound, const Substitution& s) {
  if (t.is_var()) {
    const Var& v = t.as_var();
    for (std::size_t i = bound.size(); i-- > 0;)
      if (bound[i] == v) return "#" + std::to_string(bound.size() - 1 - i);
    // Inserted terms are rendered with no binders in scope: their variables stay free.
    if (const Term* r = s.lookup(v)) return nameless_term(*r, {}, {});
    return v.name + ":" + v.sort;
  }
  std::string out = "(" + t.fn();
  for (const auto& a : t.args()) out += " " + nameless_term(a, bound, s);
  return out + ")";
}

std::string nameless_prop(const Prop& p, std::vector<Var>& bound, const Substitution& s) {
  switch (p.kind()) {
    case Connective::Top: return "T";
    case Connective::Bottom: return "F";
    case Connective::Atom: {
      std::string out = "(" + p.pred();
      for (const auto& a : p.args()) out += " " + nameless_term(a, bound, s);
      return out + ")";
    }
    case Connective::And: return "(& " + nameless_prop(p.left(), bound, s) + " " + nameless_prop(p.right(), bound, s) + ")";
    case Connective::Or: return "(| " + nameless_prop(p.left(), bound, s) + " " + nameless_prop(p.right(), bound, s) + ")";
    case Connective::Imp: return "(> " + nameless_prop(p.left(), bound, s) + " " + nameless_prop(p.right(), bound, s) + ")";
    case Connective::Forall:
    case Connective::Exists: {
      bound.push_back(p.bound());
      std::string body = nameless_prop(p.body(), bound, s);
      bound.pop_back();
      return std::string(p.kind() == Connective::Forall ? "(A:" : "(E:") + p.bound().sort + " " + body + ")";
    }
  }
  return "?";
}

}  // namespace

std::string nameless(const Prop& p, const Substitution& s) {
  std::vector<Var> bound;
  return nameless_prop(p, bound, s);
}

std::string nameless(const Term& t, const Substitution& s) { return nameless_term(t, {}, s); }

std::vector<Term> plus_leaf_terms(const Term& t) {
  if (!t.is_var() && t.fn() == "+") {
    auto l = plus_leaf_terms(t.args()[0]);
    auto r = plus_leaf_terms(t.args()[1]);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  return {t};
}

std::vector<std::string> plus_leaves(const Term& t) {
  std::vector<std::string> out;
  for (const auto& l : plus_leaf_terms(t)) out.push_back(to_string(l));
  return out;
}

Term left_comb(const std::vector<Term>& leaves) {
  Term acc = leaves.at(0);
  for (std::size_t i = 1; i < leaves.size(); ++i) acc = Term::app("+", {acc, leaves[i]}, acc.sort());
  return acc;
}

Term numeral(int n) {
  Term t = Term::app("0", {}, "nat");
  for (int i = 0; i < n; ++i) t = Term::app("S", {t}, "nat");
  return t;
}

std::optional<int> peano_value(const Term& t) {
  if (t.is_var()) return std::nullopt;
  if (t.fn() == "0") return 0;
  if (t.fn() == "S") {
    auto v = peano_value(t.args()[0]);
    return v ? std::optional<int>(*v + 1) : std::nullopt;
  }
  if (t.fn() == "+") {
    auto a = peano_value(t.args()[0]);
    auto b = peano_value(t.args()[1]);
    return a && b ? std::optional<int>(*a + *b) : std::nullopt;
  }
  return std::nullopt;
}

bool classically_valid(const Prop& p) {
  std::set<std::string> atoms;
  std::function<void(const Prop&)> scan = [&](const Prop& q) {
    if (q.is_atom()) atoms.insert(q.pred());
    else if (q.is_binary()) {
      scan(q.left());
      scan(q.right());
    }
  };
  scan(p);
  std::vector<std::string> names(atoms.begin(), atoms.end());
  std::function<bool(const Prop&, const std::map<std::string, bool>&)> eval = [&](const Prop& q, const auto& val) {
    switch (q.kind()) {
      case Connective::Top: return true;
      case Connective::Bottom: return false;
      case Connective::Atom: return val.at(q.pred());
      case Connective::And: return eval(q.left(), val) && eval(q.right(), val);
      case Connective::Or: return eval(q.left(), val) || eval(q.right(), val);
      case Connective::Imp: return !eval(q.left(), val) || eval(q.right(), val);
      default: throw Error("quantifier in truth-table oracle");
    }
  };
  for (std::size_t mask = 0; mask < (std::size_t{1} << names.size()); ++mask) {
    std::map<std::string, bool> val;
    for (std::size_t i = 0; i < names.size(); ++i) val[names[i]] = (mask >> i) & 1;
    if (!eval(p, val)) return false;
  }
  return true;
}

std::vector<Prop> conclusions(const ProofTree& p) {
  std::vector<Prop> out;
  std::function<void(const ProofTree&)> walk = [&](const ProofTree& n) {
    if (n.conclusion()) out.push_back(*n.conclusion());
    for (const auto& c : n.children()) walk(c);
  };
  walk(p);
  return out;
}

Theory builtin(const std::string& name) {
  static std::map<std::string, Theory> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_builtin(name)).first;
  return it->second;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& rel) { return std::string(DEDMOD_CORPUS_DIR) + "/" + rel; }

}  // namespace dtest
