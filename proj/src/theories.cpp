#include "dedmod/theories.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dedmod/text.hpp"

namespace dedmod {

// ---------------------------------------------------------------------------
// Builtins

namespace {

struct Builtin {
  std::string name;
  std::string source;
  std::vector<std::string> annotations;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> all = {
      {"empty",
       "sort i.\n"
       "func a : -> i.\nfunc b : -> i.\nfunc c : -> i.\nfunc d : -> i.\nfunc e : -> i.\n"
       "func f : i -> i.\nfunc + : i i -> i.\n"
       "pred A.\npred B.\npred C.\npred Q.\npred R.\npred P : i.\n",
       {}},
      {"def-conj",
       "pred A.\npred B.\npred C.\npred D.\npred P.\n"
       "rule def: P ~> (and A B).\n",
       {}},
      {"assoc",
       "sort i.\n"
       "func a : -> i.\nfunc b : -> i.\nfunc c : -> i.\nfunc d : -> i.\nfunc e : -> i.\n"
       "func + : i i -> i.\n"
       "pred Q.\npred P : i.\n"
       "rule assoc: (+ x (+ y z)) ~> (+ (+ x y) z).\n",
       {}},
      {"addition",
       "sort nat.\n"
       "func 0 : -> nat.\nfunc S : nat -> nat.\nfunc + : nat nat -> nat.\n"
       "pred P : nat.\n"
       "rule zero: (+ 0 y) ~> y.\n"
       "rule succ: (+ (S x) y) ~> (S (+ x y)).\n",
       {}},
      {"powerset",
       "sort set.\n"
       "func a : -> set.\nfunc b : -> set.\nfunc pow : set -> set.\n"
       "pred in : set set.\n"
       "rule pow: (in x (pow y)) ~> (forall z:set (imp (in z x) (in z y))).\n"
       "assert terminating.\n",
       {}},
      {"crabbe",
       "pred Q.\npred P.\n"
       "rule crabbe: P ~> (imp P Q).\n",
       {"known-negative: cut elimination fails; Q has a proof but no cut-free proof"}},
      {"comm",
       "sort i.\n"
       "func a : -> i.\nfunc b : -> i.\nfunc + : i i -> i.\n"
       "pred P : i.\n"
       "rule comm: (+ x y) ~> (+ y x).\n",
       {}},
      {"p0-forall",
       "sort nat.\n"
       "func 0 : -> nat.\nfunc S : nat -> nat.\n"
       "pred P : nat.\n"
       "rule p0: (P 0) ~> (forall x:nat (P x)).\n",
       {}},
      {"pf-collapse",
       "sort i.\n"
       "func a : -> i.\nfunc f : i -> i.\n"
       "pred P : i.\n"
       "rule collapse: (P (f x)) ~> (P x).\n",
       {}},
  };
  return all;
}

const Builtin& find_builtin(const std::string& name) {
  for (const auto& b : builtins())
    if (b.name == name) return b;
  throw Error("unknown builtin theory '" + name + "'");
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& b : builtins()) out.push_back(b.name);
    return out;
  }();
  return names;
}

const std::string& builtin_source(const std::string& name) { return find_builtin(name).source; }

Theory load_builtin(const std::string& name) {
  const Builtin& b = find_builtin(name);
  Theory th = parse_theory(b.source, b.name);
  th.annotations = b.annotations;
  validate_theory(th);
  return th;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> default_precedence(const Signature& sig) {
  std::vector<std::string> out(sig.predicates().rbegin(), sig.predicates().rend());
  out.insert(out.end(), sig.functions().rbegin(), sig.functions().rend());
  return out;
}

namespace {

void predicates_in(const Prop& p, std::set<std::string>& out) {
  switch (p.kind()) {
    case Connective::Atom: out.insert(p.pred()); return;
    case Connective::Top:
    case Connective::Bottom: return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      predicates_in(p.left(), out);
      predicates_in(p.right(), out);
      return;
    case Connective::Forall:
    case Connective::Exists: predicates_in(p.body(), out); return;
  }
}

std::string describe(const CriticalPair& cp) {
  return cp.outer_rule + "/" + cp.inner_rule + " at " + to_string(cp.position) + ": " + to_string(cp.peak) + " -> " +
         to_string(cp.outer_reduct) + " | " + to_string(cp.inner_reduct);
}

const char* evidence_name(TerminationEvidence e) {
  switch (e) {
    case TerminationEvidence::Lpo: return "lpo";
    case TerminationEvidence::UserAsserted: return "user-asserted";
    case TerminationEvidence::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

const ValidationReport& validate_theory(Theory& th, std::size_t fuel) {
  ValidationReport rep;
  rep.ran = true;
  RewriteSystem& R = th.rules;
  rep.non_confusing = check_nonconfusing(R);
  auto confluence = check_local_confluence(R, fuel);
  rep.critical_pairs = confluence.joinable.size() + confluence.failures.size() + confluence.unknowns.size();
  rep.locally_confluent = confluence.locally_confluent();
  for (const auto& cp : confluence.failures) rep.confluence_failures.push_back(describe(cp));
  for (const auto& cp : confluence.unknowns) rep.confluence_unknowns.push_back(describe(cp));
  auto termination = check_termination_lpo(R, default_precedence(th.signature));
  rep.unoriented = termination.unoriented;
  if (termination.terminating) {
    rep.termination = TerminationEvidence::Lpo;
  } else if (th.asserted_terminating) {
    R.assert_terminating();
    rep.termination = TerminationEvidence::UserAsserted;
  } else {
    R.flags().termination = TerminationEvidence::Unknown;
    rep.termination = TerminationEvidence::Unknown;
  }
  for (const auto& r : R.rules()) {
    if (r.kind() != RuleKind::Prop) continue;
    std::set<std::string> preds;
    predicates_in(r.prop_rhs(), preds);
    if (preds.contains(r.head())) rep.self_referential.push_back(r.name());
  }
  rep.annotations = th.annotations;
  th.report = std::move(rep);
  return th.report;
}

std::string ValidationReport::to_string() const {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  if (!ran) return "not validated\n";
  out << "non-confusing: " << yn(non_confusing) << '\n';
  out << "critical pairs: " << critical_pairs << '\n';
  out << "locally confluent: " << yn(locally_confluent) << '\n';
  for (const auto& f : confluence_failures) out << "  not joinable: " << f << '\n';
  for (const auto& f : confluence_unknowns) out << "  undecided at fuel: " << f << '\n';
  out << "terminating: " << (termination == TerminationEvidence::Unknown ? "unknown" : "yes") << " ("
      << evidence_name(termination) << ")\n";
  for (const auto& r : unoriented) out << "  not oriented by lpo: " << r << '\n';
  for (const auto& r : self_referential) out << "self-referential rule: " << r << '\n';
  for (const auto& a : annotations) out << "annotation: " << a << '\n';
  return out.str();
}

bool same_theory(const Theory& a, const Theory& b) {
  if (!(a.signature == b.signature) || a.asserted_terminating != b.asserted_terminating) return false;
  const auto& ra = a.rules.rules();
  const auto& rb = b.rules.rules();
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (!(ra[i] == rb[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sub-formula closure

namespace {

const std::string kPlaceholder = "\xE2\x80\xA2";  // bullet

std::string placeholder_name(std::size_t k) { return k == 1 ? kPlaceholder : kPlaceholder + std::to_string(k); }

std::size_t placeholders_in(const Prop& p) {
  std::size_t n = 0;
  for (const auto& v : free_vars(p))
    if (is_placeholder(v)) ++n;
  return n;
}

bool has_placeholder(const Prop& p) { return placeholders_in(p) > 0; }

bool schema_match_term(const Term& pat, const Term& t, Substitution& s) {
  if (pat.is_var()) {
    if (!is_placeholder(pat.as_var())) return pat == t;
    if (pat.sort() != t.sort()) return false;
    if (const Term* bound = s.lookup(pat.as_var())) return *bound == t;
    s.bind(pat.as_var(), t);
    return true;
  }
  if (t.is_var() || pat.fn() != t.fn() || pat.args().size() != t.args().size()) return false;
  for (std::size_t i = 0; i < pat.args().size(); ++i)
    if (!schema_match_term(pat.args()[i], t.args()[i], s)) return false;
  return true;
}

bool schema_match(const Prop& pat, const Prop& p, Substitution& s, std::set<std::string>& taken) {
  if (pat.kind() != p.kind()) return false;
  switch (pat.kind()) {
    case Connective::Top:
    case Connective::Bottom: return true;
    case Connective::Atom: {
      if (pat.pred() != p.pred() || pat.args().size() != p.args().size()) return false;
      for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!schema_match_term(pat.args()[i], p.args()[i], s)) return false;
      return true;
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return schema_match(pat.left(), p.left(), s, taken) && schema_match(pat.right(), p.right(), s, taken);
    case Connective::Forall:
    case Connective::Exists: {
      if (pat.bound().sort != p.bound().sort) return false;
      Var z = fresh_var(pat.bound(), taken);
      taken.insert(z.name);
      Substitution rp, rs;
      rp.bind(pat.bound(), Term::var(z));
      rs.bind(p.bound(), Term::var(z));
      return schema_match(rp.apply(pat.body()), rs.apply(p.body()), s, taken);
    }
  }
  return false;
}

}  // namespace

bool is_placeholder(const Var& v) { return v.name.rfind(kPlaceholder, 0) == 0; }

const char* to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Closed: return "closed";
    case ClosureStatus::TruncatedAtFuel: return "truncated-at-fuel";
    case ClosureStatus::InfiniteSchematic: return "infinite-schematic";
  }
  return "closed";
}

bool SubformulaSet::contains(const RewriteSystem& R, const Prop& p, std::size_t fuel) const {
  CongruenceSession session(R, fuel);
  for (const auto& cls : classes) {
    for (const auto& m : cls.members) {
      if (has_placeholder(m)) {
        std::set<std::string> taken;
        collect_names(m, taken);
        collect_names(p, taken);
        Substitution s;
        if (schema_match(m, p, s, taken)) return true;
        continue;
      }
      try {
        if (session.congruent(m, p)) return true;
      } catch (const FuelExhausted&) {
      }
    }
  }
  return false;
}

SubformulaSet subformula_closure(const Theory& theory, const Prop& a, std::size_t fuel) {
  SubformulaSet out;
  CongruenceSession session(theory.rules, fuel);
  std::vector<Prop> work{a};
  std::vector<Prop> seen;
  bool schematic = false, truncated = false;
  std::size_t budget = fuel;

  auto already = [&](const Prop& p) {
    return std::any_of(seen.begin(), seen.end(), [&](const Prop& q) { return alpha_eq(p, q); });
  };

  while (!work.empty()) {
    Prop p = work.front();
    work.erase(work.begin());
    if (already(p)) continue;
    if (budget == 0) {
      truncated = true;
      break;
    }
    --budget;
    seen.push_back(p);

    bool placed = false;
    try {
      for (auto& cls : out.classes) {
        if (session.congruent(cls.representative, p)) {
          cls.members.push_back(p);
          placed = true;
          break;
        }
      }
    } catch (const FuelExhausted&) {
      truncated = true;
    }
    if (!placed) out.classes.push_back(SubformulaClass{p, {p}});

    switch (p.kind()) {
      case Connective::Atom: {
        try {
          Prop h = session.head_normal(p);
          if (!alpha_eq(h, p)) work.push_back(h);
        } catch (const FuelExhausted&) {
          truncated = true;
        }
        break;
      }
      case Connective::Top:
      case Connective::Bottom: break;
      case Connective::And:
      case Connective::Or:
      case Connective::Imp:
        work.push_back(p.left());
        work.push_back(p.right());
        break;
      case Connective::Forall:
      case Connective::Exists: {
        Var hole{placeholder_name(placeholders_in(p) + 1), p.bound().sort};
        Substitution s;
        s.bind(p.bound(), Term::var(hole));
        work.push_back(s.apply(p.body()));
        schematic = true;
        break;
      }
    }
  }
  out.status = truncated ? ClosureStatus::TruncatedAtFuel
               : schematic ? ClosureStatus::InfiniteSchematic
                           : ClosureStatus::Closed;
  return out;
}

}  // namespace dedmod
