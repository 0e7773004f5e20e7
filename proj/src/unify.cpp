#include "dedmod/unify.hpp"

#include <deque>
#include <map>
#include <unordered_set>

namespace dedmod {

// ---------------------------------------------------------------------------
// Syntactic unification

namespace {

bool bindable(const Term& t, const std::set<Var>& rigid) { return t.is_var() && !rigid.contains(t.as_var()); }

bool solve(std::deque<TermEquation> work, Substitution& sigma, const std::set<Var>& rigid) {
  while (!work.empty()) {
    auto [s, t] = work.front();
    work.pop_front();
    s = sigma.apply(s);
    t = sigma.apply(t);
    if (s == t) continue;
    if (s.sort() != t.sort()) return false;
    if (!bindable(s, rigid) && bindable(t, rigid)) std::swap(s, t);
    if (bindable(s, rigid)) {
      if (occurs(s.as_var(), t)) return false;
      Substitution step;
      step.bind(s.as_var(), t);
      sigma = step.after(sigma);
      continue;
    }
    if (s.is_var() || t.is_var()) return false;
    if (s.fn() != t.fn() || s.args().size() != t.args().size()) return false;
    for (std::size_t i = 0; i < s.args().size(); ++i) work.emplace_back(s.args()[i], t.args()[i]);
  }
  return true;
}

bool collect_prop_equations(const Prop& a, const Prop& b, std::deque<TermEquation>& out, std::vector<std::pair<Prop, Prop>>& closed) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom:
      if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) out.emplace_back(a.args()[i], b.args()[i]);
      return true;
    case Connective::Top:
    case Connective::Bottom:
      return true;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return collect_prop_equations(a.left(), b.left(), out, closed) &&
             collect_prop_equations(a.right(), b.right(), out, closed);
    case Connective::Forall:
    case Connective::Exists:
      closed.emplace_back(a, b);
      return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> unify_all(const std::vector<TermEquation>& eqs, const std::set<Var>& rigid) {
  Substitution sigma;
  if (!solve(std::deque<TermEquation>(eqs.begin(), eqs.end()), sigma, rigid)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> unify_syntactic(const Term& a, const Term& b, const std::set<Var>& rigid) {
  return unify_all({{a, b}}, rigid);
}

std::optional<Substitution> unify_syntactic(const Prop& a, const Prop& b, const std::set<Var>& rigid) {
  std::deque<TermEquation> eqs;
  std::vector<std::pair<Prop, Prop>> closed;
  if (!collect_prop_equations(a, b, eqs, closed)) return std::nullopt;
  Substitution sigma;
  if (!solve(std::move(eqs), sigma, rigid)) return std::nullopt;
  for (const auto& [x, y] : closed)
    if (!alpha_eq(sigma.apply(x), sigma.apply(y))) return std::nullopt;
  return sigma;
}

std::optional<Substitution> unify_syntactic(const Expr& a, const Expr& b, const std::set<Var>& rigid) {
  if (a.index() != b.index()) return std::nullopt;
  if (std::holds_alternative<Term>(a)) return unify_syntactic(std::get<Term>(a), std::get<Term>(b), rigid);
  return unify_syntactic(std::get<Prop>(a), std::get<Prop>(b), rigid);
}

// ---------------------------------------------------------------------------
// Narrowing

namespace {

struct NarrowState {
  std::vector<TermEquation> eqs;
  Substitution sigma;
  std::size_t depth = 0;
};

class Narrower {
 public:
  Narrower(const UnificationProblem& problem, std::size_t fuel)
      : R_(problem.system ? *problem.system : empty_system()), rigid_(problem.rigid), fuel_(fuel), session_(R_, fuel) {
    for (const auto& [a, b] : problem.pairs) {
      for (const auto& v : free_vars(a))
        if (!rigid_.contains(v)) problem_vars_.insert(v);
      for (const auto& v : free_vars(b))
        if (!rigid_.contains(v)) problem_vars_.insert(v);
      std::visit([&](const auto& x) { collect_names(x, taken_); }, a);
      std::visit([&](const auto& x) { collect_names(x, taken_); }, b);
    }
    for (const auto& v : rigid_) taken_.insert(v.name);
  }

  SolutionStream run(const UnificationProblem& problem, std::size_t max_depth, std::size_t cap) {
    SolutionStream out;
    NarrowState init;
    for (const auto& [a, b] : problem.pairs) {
      if (a.index() != b.index()) throw Error("narrowing: cannot unify a term with a proposition");
      if (const auto* ta = std::get_if<Term>(&a)) {
        const Term& tb = std::get<Term>(b);
        if (ta->sort() != tb.sort()) return out;
        init.eqs.emplace_back(*ta, tb);
        continue;
      }
      const Prop& pa = std::get<Prop>(a);
      const Prop& pb = std::get<Prop>(b);
      if (!pa.is_atom() || !pb.is_atom()) throw Error("narrowing: only atoms are unified at the proposition level");
      if (pa.pred() != pb.pred() || pa.args().size() != pb.args().size()) return out;
      for (std::size_t i = 0; i < pa.args().size(); ++i) init.eqs.emplace_back(pa.args()[i], pb.args()[i]);
    }
    normalize_eqs(init.eqs);
    if (clashes(init.eqs)) return out;

    std::deque<NarrowState> queue{init};
    std::unordered_set<std::string> seen{state_key(init)};
    std::unordered_set<std::string> emitted;
    bool frontier_left = false;

    while (!queue.empty()) {
      NarrowState state = std::move(queue.front());
      queue.pop_front();
      ++out.states_explored;

      if (auto theta = unify_all(state.eqs, rigid_)) {
        Substitution candidate = theta->after(state.sigma).restricted(problem_vars_);
        if (verify(problem, candidate)) {
          std::string key = solution_key(candidate);
          if (emitted.insert(key).second) {
            out.solutions.push_back(candidate);
            if (out.solutions.size() >= cap) {
              out.status = StreamStatus::CapReached;
              return out;
            }
          }
        }
      }

      auto successors = expand(state);
      if (state.depth >= max_depth) {
        if (!successors.empty()) frontier_left = true;
        continue;
      }
      for (auto& next : successors) {
        std::string key = state_key(next);
        if (seen.insert(key).second) queue.push_back(std::move(next));
      }
    }
    out.status = frontier_left ? StreamStatus::CompleteAtBound : StreamStatus::SearchSpaceExhausted;
    return out;
  }

 private:
  static const RewriteSystem& empty_system() {
    static const RewriteSystem empty;
    return empty;
  }

  void normalize_eqs(std::vector<TermEquation>& eqs) {
    for (auto& [l, r] : eqs) {
      if (auto n = normalize(R_, l, fuel_); n.value) l = *n.value;
      if (auto n = normalize(R_, r, fuel_); n.value) r = *n.value;
    }
  }

  // The root of an application whose symbol heads no rule never changes, and
  // a rigid variable never rewrites.
  bool rigid_root(const Term& t) const {
    if (t.is_var()) return rigid_.contains(t.as_var());
    return !R_.defines(t.fn());
  }

  bool clash(const Term& a, const Term& b) const {
    if (a == b) return false;
    if (!rigid_root(a) || !rigid_root(b)) return false;
    if (a.is_var() || b.is_var()) return true;
    if (a.fn() != b.fn() || a.args().size() != b.args().size()) return true;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (clash(a.args()[i], b.args()[i])) return true;
    return false;
  }

  bool clashes(const std::vector<TermEquation>& eqs) const {
    for (const auto& [l, r] : eqs)
      if (clash(l, r)) return true;
    return false;
  }

  std::vector<NarrowState> expand(const NarrowState& state) {
    std::vector<NarrowState> out;
    for (std::size_t i = 0; i < state.eqs.size(); ++i) {
      for (int side = 0; side < 2; ++side) {
        const Term& t = side == 0 ? state.eqs[i].first : state.eqs[i].second;
        std::vector<Position> positions;
        Position pos;
        collect_positions(t, pos, positions);
        for (const auto& p : positions) {
          Term u = subterm(t, p);
          for (const auto& rule : R_.rules()) {
            if (rule.kind() != RuleKind::Term || rule.head() != u.fn()) continue;
            auto [lhs, rhs] = renamed(rule);
            auto theta = unify_syntactic(u, lhs, rigid_);
            if (!theta) continue;
            NarrowState next;
            next.depth = state.depth + 1;
            for (std::size_t k = 0; k < state.eqs.size(); ++k) {
              Term l = theta->apply(state.eqs[k].first);
              Term r = theta->apply(state.eqs[k].second);
              if (k == i) {
                Term& target = side == 0 ? l : r;
                target = replace(target, p, theta->apply(rhs));
              }
              next.eqs.emplace_back(std::move(l), std::move(r));
            }
            normalize_eqs(next.eqs);
            if (clashes(next.eqs)) continue;
            next.sigma = theta->after(state.sigma);
            out.push_back(std::move(next));
          }
        }
      }
    }
    return out;
  }

  // Rule variables get a numeric suffix from a counter, skipping names that
  // occur in the problem.
  std::pair<Term, Term> renamed(const RewriteRule& rule) {
    Substitution s;
    for (const auto& v : rule.variables()) {
      std::string name;
      do {
        name = v.name + "_" + std::to_string(++counter_);
      } while (taken_.contains(name));
      s.bind(v, Term::var(name, v.sort));
    }
    return {s.apply(rule.term_lhs()), s.apply(rule.term_rhs())};
  }

  static void collect_positions(const Term& t, Position& pos, std::vector<Position>& out) {
    if (t.is_var()) return;
    out.push_back(pos);
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      pos.push_back(i);
      collect_positions(t.args()[i], pos, out);
      pos.pop_back();
    }
  }

  bool verify(const UnificationProblem& problem, const Substitution& s) {
    try {
      for (const auto& [a, b] : problem.pairs) {
        Expr ia = s.apply(a), ib = s.apply(b);
        bool ok = std::holds_alternative<Term>(ia) ? session_.congruent(std::get<Term>(ia), std::get<Term>(ib))
                                                   : session_.congruent(std::get<Prop>(ia), std::get<Prop>(ib));
        if (!ok) return false;
      }
      return true;
    } catch (const FuelExhausted&) {
      return false;
    }
  }

  // Auxiliary variables renamed by order of first appearance.
  std::string canonical(const std::string& prefix, const std::vector<Term>& terms) const {
    std::map<Var, std::string> names;
    std::string out = prefix;
    std::function<void(const Term&)> print = [&](const Term& t) {
      if (t.is_var()) {
        const Var& v = t.as_var();
        if (problem_vars_.contains(v) || rigid_.contains(v)) {
          out += v.name;
        } else {
          auto [it, inserted] = names.emplace(v, "#" + std::to_string(names.size()));
          out += it->second;
        }
        out += ":" + v.sort;
        return;
      }
      out += "(" + t.fn();
      for (const auto& a : t.args()) {
        out += ' ';
        print(a);
      }
      out += ")";
    };
    for (const auto& t : terms) {
      print(t);
      out += ';';
    }
    return out;
  }

  std::string solution_key(const Substitution& s) const {
    std::vector<Term> terms;
    std::string prefix;
    for (const auto& [v, t] : s.bindings()) {
      prefix += v.name + ",";
      terms.push_back(t);
    }
    return canonical(prefix + "|", terms);
  }

  std::string state_key(const NarrowState& st) const {
    std::vector<Term> terms;
    for (const auto& [l, r] : st.eqs) {
      terms.push_back(l);
      terms.push_back(r);
    }
    std::string prefix;
    for (const auto& v : problem_vars_) {
      prefix += v.name + ",";
      const Term* t = st.sigma.lookup(v);
      terms.push_back(t ? *t : Term::var(v));
    }
    return canonical(prefix + "|", terms);
  }

  const RewriteSystem& R_;
  std::set<Var> rigid_;
  std::set<Var> problem_vars_;
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
  std::size_t fuel_;
  CongruenceSession session_;
};

}  // namespace

SolutionStream narrow_unify(const UnificationProblem& problem, std::size_t depth, std::size_t cap, std::size_t fuel) {
  if (cap == 0) throw Error("narrowing: solution cap must be positive");
  Narrower n(problem, fuel);
  return n.run(problem, depth, cap);
}

}  // namespace dedmod
