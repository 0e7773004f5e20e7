#include "dedmod/prover.hpp"

#include <functional>
#include <map>

namespace dedmod {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::Fail: return "fail";
    case SearchStatus::BoundExceeded: return "bound-exceeded";
  }
  return "fail";
}

namespace {

struct NodeLimit {};

bool is_meta(const Var& v) { return !v.name.empty() && v.name[0] == '?'; }

bool has_meta(const Prop& p) {
  for (const auto& v : free_vars(p))
    if (is_meta(v)) return true;
  return false;
}

// A hypothesis and the elimination chain that proves it from the labelled
// hypotheses; using chains instead of fresh labels keeps proofs cut-free.
struct Hyp {
  Prop formula;
  ProofTree evidence;
};

struct Branch {
  std::vector<Hyp> hyps;
  /// Variables a metavariable created on this branch may be bound to.
  std::set<Var> scope;
};

struct State {
  Substitution sigma;
  std::map<std::string, std::set<Var>> allowed;
};

using Cont = std::function<bool(const ProofTree&, State&)>;

ProofTree node(RuleTag tag, std::vector<ProofTree> children = {}, std::vector<std::string> labels = {},
               std::optional<Term> witness = std::nullopt, std::optional<Var> eigen = std::nullopt) {
  return ProofTree::make(tag, std::move(children), std::move(labels), std::move(witness), std::move(eigen));
}

Prop instantiate_body(const Prop& q, const Term& t) {
  Substitution s;
  s.bind(q.bound(), t);
  return s.apply(q.body());
}

ProofTree apply_to_proof(const ProofTree& p, const Substitution& s) {
  std::vector<ProofTree> children;
  for (const auto& c : p.children()) children.push_back(apply_to_proof(c, s));
  std::optional<Prop> conclusion;
  if (p.conclusion()) conclusion = s.apply(*p.conclusion());
  std::optional<Term> witness;
  if (p.witness()) witness = s.apply(*p.witness());
  return ProofTree::make(p.tag(), std::move(children), p.labels(), witness, p.eigenvariable(), conclusion);
}

void metas_in(const ProofTree& p, std::set<Var>& out) {
  if (p.witness())
    for (const auto& v : free_vars(*p.witness()))
      if (is_meta(v)) out.insert(v);
  for (const auto& c : p.children()) metas_in(c, out);
}

class Search {
 public:
  Search(const Theory& theory, const SearchOptions& options, const Sequent& goal)
      : theory_(theory), options_(options), session_(theory.rules, options.fuel) {
    for (const auto& r : theory.rules.rules())
      if (r.kind() == RuleKind::Term) has_term_rules_ = true;
    collect_names(goal.conclusion, names_);
    for (const auto& h : goal.context) {
      collect_names(h.formula, names_);
      labels_.insert(h.label);
    }
  }

  SearchStats stats;
  bool bound_hit = false;

  // Without metavariables in the sequent every proof of it serves the
  // continuation equally, so only the first one is offered.
  bool solve(const Prop& goal, const Branch& br, std::size_t depth, State& st, const Cont& k) {
    if (!meta_free(goal, br, st)) return solve_inner(goal, br, depth, st, k);
    std::optional<std::pair<ProofTree, State>> first;
    solve_inner(goal, br, depth, st, [&](const ProofTree& p, State& s) {
      first.emplace(p, s);
      return true;
    });
    if (!first) return false;
    return k(first->first, first->second);
  }

  bool solve_inner(const Prop& goal, const Branch& br, std::size_t depth, State& st, const Cont& k) {
    if (++stats.nodes_expanded > options_.node_limit) throw NodeLimit{};
    if (depth == 0) {
      if (has_move(goal, br, st)) bound_hit = true;
      return false;
    }
    const std::size_t d = depth - 1;
    const Prop g = whnf(st.sigma.apply(goal));

    // Invertible eliminations, applied eagerly to the first candidate.
    for (std::size_t i = 0; i < br.hyps.size(); ++i) {
      const ProofTree& ev = br.hyps[i].evidence;
      const Prop h = whnf(st.sigma.apply(br.hyps[i].formula));
      switch (h.kind()) {
        case Connective::Bottom:
          return k(node(RuleTag::BottomElim, {ev}), st);
        case Connective::And: {
          Branch nb = br;
          nb.hyps[i] = Hyp{h.left(), node(RuleTag::AndElimLeft, {ev})};
          nb.hyps.insert(nb.hyps.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         Hyp{h.right(), node(RuleTag::AndElimRight, {ev})});
          return solve(goal, nb, d, st, k);
        }
        case Connective::Or: {
          std::string l1 = fresh_label(), l2 = fresh_label();
          Branch left = br, right = br;
          left.hyps[i] = Hyp{h.left(), node(RuleTag::Axiom, {}, {l1})};
          right.hyps[i] = Hyp{h.right(), node(RuleTag::Axiom, {}, {l2})};
          return solve(goal, left, d, st, [&](const ProofTree& p1, State& s1) {
            return solve(goal, right, d, s1, [&](const ProofTree& p2, State& s2) {
              return k(node(RuleTag::OrElim, {ev, p1, p2}, {l1, l2}), s2);
            });
          });
        }
        case Connective::Exists: {
          Var y = fresh_eigen(h.bound());
          std::string l = fresh_label();
          Branch nb = br;
          nb.hyps[i] = Hyp{instantiate_body(h, Term::var(y)), node(RuleTag::Axiom, {}, {l})};
          nb.scope.insert(y);
          return solve(goal, nb, d, st, [&](const ProofTree& p, State& s) {
            return k(node(RuleTag::ExistsElim, {ev, p}, {l}, std::nullopt, y), s);
          });
        }
        default:
          break;
      }
    }

    // Invertible introductions.
    switch (g.kind()) {
      case Connective::Top:
        return k(node(RuleTag::TopIntro), st);
      case Connective::And:
        return solve(g.left(), br, d, st, [&](const ProofTree& p1, State& s1) {
          return solve(g.right(), br, d, s1,
                       [&](const ProofTree& p2, State& s2) { return k(node(RuleTag::AndIntro, {p1, p2}), s2); });
        });
      case Connective::Imp: {
        std::string l = fresh_label();
        Branch nb = br;
        nb.hyps.push_back(Hyp{g.left(), node(RuleTag::Axiom, {}, {l})});
        return solve(g.right(), nb, d, st,
                     [&](const ProofTree& p, State& s) { return k(node(RuleTag::ImpIntro, {p}, {l}), s); });
      }
      case Connective::Forall: {
        Var y = fresh_eigen(g.bound());
        Branch nb = br;
        nb.scope.insert(y);
        return solve(instantiate_body(g, Term::var(y)), nb, d, st, [&](const ProofTree& p, State& s) {
          return k(node(RuleTag::ForallIntro, {p}, {}, std::nullopt, y), s);
        });
      }
      default:
        break;
    }

    // Choice points, in context order.
    for (const auto& hyp : br.hyps) {
      for (State& s : close(hyp.formula, goal, st))
        if (k(hyp.evidence, s)) return true;
    }
    if (g.kind() == Connective::Or) {
      if (solve(g.left(), br, d, st,
                [&](const ProofTree& p, State& s) { return k(node(RuleTag::OrIntroLeft, {p}), s); }))
        return true;
      if (solve(g.right(), br, d, st,
                [&](const ProofTree& p, State& s) { return k(node(RuleTag::OrIntroRight, {p}), s); }))
        return true;
    }
    if (g.kind() == Connective::Exists) {
      State s0 = st;
      Term m = new_meta(g.bound().sort, br.scope, s0);
      if (solve(instantiate_body(g, m), br, d, s0,
                [&](const ProofTree& p, State& s) { return k(node(RuleTag::ExistsIntro, {p}, {}, m), s); }))
        return true;
    }
    for (std::size_t i = 0; i < br.hyps.size(); ++i) {
      const ProofTree& ev = br.hyps[i].evidence;
      const Prop h = whnf(st.sigma.apply(br.hyps[i].formula));
      if (h.kind() == Connective::Imp) {
        const Prop conclusion = h.right();
        if (known(conclusion, br, st)) continue;
        bool found = solve(h.left(), br, d, st, [&](const ProofTree& pa, State& s1) {
          Branch nb = br;
          nb.hyps.push_back(Hyp{conclusion, node(RuleTag::ImpElim, {ev, pa})});
          return solve(goal, nb, d, s1, k);
        });
        if (found) return true;
      } else if (h.kind() == Connective::Forall) {
        State s0 = st;
        Term m = new_meta(h.bound().sort, br.scope, s0);
        Branch nb = br;
        nb.hyps.push_back(Hyp{instantiate_body(h, m), node(RuleTag::ForallElim, {ev}, {}, m)});
        if (solve(goal, nb, d, s0, k)) return true;
      }
    }
    return false;
  }

  /// Binds every metavariable of the candidate proof; unresolved ones get a
  /// constant of their sort, or a fresh variable when the sort has none.
  ProofTree resolve(const ProofTree& p, const State& st) {
    ProofTree out = apply_to_proof(p, st.sigma);
    std::set<Var> left;
    metas_in(out, left);
    if (left.empty()) return out;
    std::set<std::string> taken = names_;
    auto more = proof_names(out);
    taken.insert(more.begin(), more.end());
    Substitution defaults;
    for (const auto& m : left) {
      std::optional<Term> c;
      for (const auto& f : theory_.signature.functions()) {
        const FunctionDecl* decl = theory_.signature.function(f);
        if (decl->args.empty() && decl->result == m.sort) {
          c = Term::app(f, {}, m.sort);
          break;
        }
      }
      if (!c) {
        Var w = fresh_var(Var{"w", m.sort}, taken);
        taken.insert(w.name);
        c = Term::var(w);
      }
      defaults.bind(m, *c);
    }
    return apply_to_proof(out, defaults);
  }

 private:
  Prop whnf(const Prop& p) {
    try {
      return session_.head_normal(p);
    } catch (const FuelExhausted&) {
      bound_hit = true;
      return p;
    }
  }

  std::string fresh_label() {
    std::string l = fresh_name("h", labels_);
    labels_.insert(l);
    return l;
  }

  Var fresh_eigen(const Var& base) {
    Var y = fresh_var(base, names_);
    names_.insert(y.name);
    return y;
  }

  Term new_meta(const Sort& sort, const std::set<Var>& scope, State& st) {
    Var m{"?" + std::to_string(++meta_counter_), sort};
    st.allowed[m.name] = scope;
    return Term::var(m);
  }

  bool has_move(const Prop& goal, const Branch& br, const State& st) {
    Prop g = whnf(st.sigma.apply(goal));
    if (g.kind() != Connective::Atom && g.kind() != Connective::Bottom) return true;
    for (const auto& hyp : br.hyps) {
      Prop h = whnf(st.sigma.apply(hyp.formula));
      if (h.kind() != Connective::Atom) return true;
      if (g.kind() == Connective::Atom && h.pred() == g.pred()) return true;
    }
    return false;
  }

  bool meta_free(const Prop& goal, const Branch& br, const State& st) {
    if (has_meta(st.sigma.apply(goal))) return false;
    for (const auto& hyp : br.hyps)
      if (has_meta(st.sigma.apply(hyp.formula))) return false;
    return true;
  }

  // The formula is already available, possibly split into conjuncts:
  // eliminating towards it again is useless.
  bool known(const Prop& p, const Branch& br, const State& st) {
    Prop q = st.sigma.apply(p);
    for (const auto& hyp : br.hyps)
      if (alpha_eq(st.sigma.apply(hyp.formula), q)) return true;
    Prop h = whnf(q);
    if (h.kind() == Connective::Top) return true;
    if (h.kind() == Connective::And) return known(h.left(), br, st) && known(h.right(), br, st);
    return false;
  }

  bool decompose(const Prop& a0, const Prop& b0, std::vector<std::pair<Expr, Expr>>& pairs) {
    Prop a = whnf(a0), b = whnf(b0);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Connective::Top:
      case Connective::Bottom: return true;
      case Connective::Atom:
        if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
        for (std::size_t i = 0; i < a.args().size(); ++i) pairs.emplace_back(a.args()[i], b.args()[i]);
        return true;
      case Connective::And:
      case Connective::Or:
      case Connective::Imp:
        return decompose(a.left(), b.left(), pairs) && decompose(a.right(), b.right(), pairs);
      case Connective::Forall:
      case Connective::Exists: {
        if (a.bound().sort != b.bound().sort) return false;
        Var z = fresh_eigen(a.bound());
        return decompose(instantiate_body(a, Term::var(z)), instantiate_body(b, Term::var(z)), pairs);
      }
    }
    return false;
  }

  // Adds solution `s` to the state, respecting metavariable scopes.
  bool extend(State& st, Substitution s, const std::set<Var>& rigid) {
    // Auxiliary variables left by narrowing become metavariables.
    std::set<Var> aux;
    for (const auto& [v, t] : s.bindings())
      for (const auto& w : free_vars(t))
        if (!is_meta(w) && !rigid.contains(w)) aux.insert(w);
    if (!aux.empty()) {
      Substitution rename;
      for (const auto& w : aux) {
        Var m{"?" + std::to_string(++meta_counter_), w.sort};
        rename.bind(w, Term::var(m));
      }
      Substitution renamed;
      for (const auto& [v, t] : s.bindings()) renamed.bind(v, rename.apply(t));
      for (const auto& [v, t] : s.bindings()) {
        for (const auto& w : aux)
          if (occurs(w, t)) st.allowed[rename.lookup(w)->as_var().name] = st.allowed[v.name];
      }
      s = renamed;
    }
    for (const auto& [v, t] : s.bindings()) {
      if (!is_meta(v)) return false;
      const std::set<Var> scope = st.allowed[v.name];
      for (const auto& w : free_vars(t)) {
        if (is_meta(w)) {
          std::set<Var> narrowed;
          for (const auto& x : st.allowed[w.name])
            if (scope.contains(x)) narrowed.insert(x);
          st.allowed[w.name] = std::move(narrowed);
        } else if (!scope.contains(w)) {
          return false;
        }
      }
    }
    st.sigma = s.after(st.sigma);
    return true;
  }

  std::vector<State> close(const Prop& hyp, const Prop& goal, const State& st) {
    std::vector<State> out;
    Prop a = st.sigma.apply(hyp), b = st.sigma.apply(goal);
    try {
      if (!has_meta(a) && !has_meta(b)) {
        if (session_.congruent(a, b)) out.push_back(st);
        return out;
      }
      std::vector<std::pair<Expr, Expr>> pairs;
      if (!decompose(a, b, pairs)) return out;
      std::set<Var> rigid;
      for (const auto& [l, r] : pairs)
        for (const auto& e : {l, r})
          for (const auto& v : free_vars(e))
            if (!is_meta(v)) rigid.insert(v);
      std::vector<Substitution> candidates;
      if (pairs.empty()) {
        candidates.emplace_back();
      } else if (!has_term_rules_) {
        std::vector<TermEquation> eqs;
        for (const auto& [l, r] : pairs) eqs.emplace_back(std::get<Term>(l), std::get<Term>(r));
        if (auto s = unify_all(eqs, rigid)) candidates.push_back(*s);
      } else {
        ++stats.narrowing_calls;
        UnificationProblem problem{pairs, &theory_.rules, rigid};
        SolutionStream stream =
            narrow_unify(problem, options_.narrowing_depth, options_.solution_cap, options_.fuel);
        if (stream.bound_exceeded()) bound_hit = true;
        candidates = std::move(stream.solutions);
      }
      for (auto& s : candidates) {
        State next = st;
        if (!extend(next, s, rigid)) continue;
        if (!session_.congruent(next.sigma.apply(hyp), next.sigma.apply(goal))) continue;
        out.push_back(std::move(next));
      }
    } catch (const FuelExhausted&) {
      bound_hit = true;
    }
    return out;
  }

  const Theory& theory_;
  SearchOptions options_;
  CongruenceSession session_;
  bool has_term_rules_ = false;
  std::size_t meta_counter_ = 0;
  std::set<std::string> names_;
  std::set<std::string> labels_;
};

}  // namespace

SearchOutcome search_proof(const Theory& theory, const Sequent& goal, std::size_t depth, SearchOptions options) {
  if (!theory.validated())
    throw UnvalidatedTheory("theory '" + theory.name + "' must be validated and non-confusing before proof search");
  if (auto wf = wellformed(theory.signature, goal.conclusion); !wf) throw Error("ill-formed goal: " + wf.message);
  std::set<std::string> labels;
  Branch br;
  for (const auto& h : goal.context) {
    if (auto wf = wellformed(theory.signature, h.formula); !wf)
      throw Error("ill-formed hypothesis " + h.label + ": " + wf.message);
    if (!labels.insert(h.label).second) throw Error("duplicate hypothesis label " + h.label);
    br.hyps.push_back(Hyp{h.formula, node(RuleTag::Axiom, {}, {h.label})});
    auto fv = free_vars(h.formula);
    br.scope.insert(fv.begin(), fv.end());
  }
  auto fv = free_vars(goal.conclusion);
  br.scope.insert(fv.begin(), fv.end());

  Search search(theory, options, goal);
  SearchOutcome outcome;
  State st;
  try {
    search.solve_inner(goal.conclusion, br, depth, st, [&](const ProofTree& p, State& s) {
      ProofTree candidate = search.resolve(p, s);
      CheckResult r = check_proof(theory, candidate, goal, options.fuel);
      if (!r.ok || !find_cuts(theory, r.elaborated, options.fuel).empty()) {
        ++search.stats.rejected;
        return false;
      }
      outcome.proof = r.elaborated;
      return true;
    });
  } catch (const NodeLimit&) {
    search.bound_hit = true;
    outcome.note = "node limit " + std::to_string(options.node_limit) + " reached";
  }
  outcome.stats = search.stats;
  if (outcome.proof)
    outcome.status = SearchStatus::Proved;
  else
    outcome.status = search.bound_hit ? SearchStatus::BoundExceeded : SearchStatus::Fail;
  return outcome;
}

SearchOutcome consistency_probe(const Theory& theory, std::size_t depth, std::vector<Hypothesis> hypotheses,
                                SearchOptions options) {
  return search_proof(theory, Sequent{std::move(hypotheses), Prop::bottom()}, depth, options);
}

}  // namespace dedmod
