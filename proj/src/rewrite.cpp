#include "dedmod/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "dedmod/unify.hpp"

namespace dedmod {

// ---------------------------------------------------------------------------
// Rules and systems

namespace {

void require_covered(const std::string& name, const std::set<Var>& lhs_vars, const std::set<Var>& rhs_vars) {
  for (const auto& v : rhs_vars)
    if (!lhs_vars.contains(v))
      throw RuleError("rule " + name + ": variable " + v.name + " of the right-hand side does not occur on the left");
}

}  // namespace

RewriteRule RewriteRule::term_rule(std::string name, Term lhs, Term rhs) {
  if (lhs.is_var()) throw RuleError("rule " + name + ": left-hand side is a variable");
  if (lhs.sort() != rhs.sort())
    throw RuleError("rule " + name + ": sides have different sorts (" + lhs.sort() + ", " + rhs.sort() + ")");
  require_covered(name, free_vars(lhs), free_vars(rhs));
  RewriteRule r;
  r.name_ = std::move(name);
  r.kind_ = RuleKind::Term;
  r.term_lhs_ = std::move(lhs);
  r.term_rhs_ = std::move(rhs);
  return r;
}

RewriteRule RewriteRule::prop_rule(std::string name, Prop lhs, Prop rhs) {
  if (!lhs.is_atom()) throw RuleError("rule " + name + ": left-hand side of a proposition rule must be an atom");
  require_covered(name, free_vars(lhs), free_vars(rhs));
  RewriteRule r;
  r.name_ = std::move(name);
  r.kind_ = RuleKind::Prop;
  r.prop_lhs_ = std::move(lhs);
  r.prop_rhs_ = std::move(rhs);
  return r;
}

Expr RewriteRule::lhs() const { return kind_ == RuleKind::Term ? Expr(term_lhs_) : Expr(prop_lhs_); }
Expr RewriteRule::rhs() const { return kind_ == RuleKind::Term ? Expr(term_rhs_) : Expr(prop_rhs_); }

const std::string& RewriteRule::head() const { return kind_ == RuleKind::Term ? term_lhs_.fn() : prop_lhs_.pred(); }

std::set<Var> RewriteRule::variables() const { return free_vars(lhs()); }

RewriteRule RewriteRule::renamed_apart(std::set<std::string>& taken) const {
  Substitution s;
  for (const auto& v : variables()) {
    Var fresh = fresh_var(v, taken);
    taken.insert(fresh.name);
    s.bind(v, Term::var(fresh));
  }
  RewriteRule r = *this;
  if (kind_ == RuleKind::Term) {
    r.term_lhs_ = s.apply(term_lhs_);
    r.term_rhs_ = s.apply(term_rhs_);
  } else {
    r.prop_lhs_ = s.apply(prop_lhs_);
    r.prop_rhs_ = s.apply(prop_rhs_);
  }
  return r;
}

bool operator==(const RewriteRule& a, const RewriteRule& b) {
  return a.name_ == b.name_ && a.kind_ == b.kind_ && alpha_eq(a.lhs(), b.lhs()) && alpha_eq(a.rhs(), b.rhs());
}

std::string to_string(const RewriteRule& r) {
  return "rule " + r.name() + ": " + to_string(r.lhs()) + " ~> " + to_string(r.rhs()) + ".";
}

RewriteSystem::RewriteSystem(std::vector<RewriteRule> rules) {
  for (auto& r : rules) add(std::move(r));
}

void RewriteSystem::add(RewriteRule r) {
  if (find(r.name())) throw RuleError("duplicate rule name '" + r.name() + "'");
  rules_.push_back(std::move(r));
  flags_ = SystemFlags{};
}

const RewriteRule* RewriteSystem::find(const std::string& name) const {
  for (const auto& r : rules_)
    if (r.name() == name) return &r;
  return nullptr;
}

bool RewriteSystem::has_prop_rules_for(const std::string& pred) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const RewriteRule& r) { return r.kind() == RuleKind::Prop && r.head() == pred; });
}

bool RewriteSystem::defines(const std::string& fn) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const RewriteRule& r) { return r.kind() == RuleKind::Term && r.head() == fn; });
}

void Fuel::consume() {
  if (remaining_ == 0) throw FuelExhausted();
  --remaining_;
  ++used_;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_var()) {
    if (pattern.sort() != subject.sort()) return false;
    if (const Term* bound = s.lookup(pattern.as_var())) return *bound == subject;
    s.bind(pattern.as_var(), subject);
    // Binding x to itself leaves no trace; record it so later occurrences agree.
    return true;
  }
  if (subject.is_var() || pattern.fn() != subject.fn() || pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], s)) return false;
  return true;
}

// match_into drops identity bindings, so a pattern variable matched against an
// identically named subject variable can be re-bound later. Guard against it by
// checking the final instance.
std::optional<Substitution> checked_match(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  if (!(s.apply(pattern) == subject)) return std::nullopt;
  return s;
}

}  // namespace

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject) {
  return checked_match(pattern, subject);
}

std::optional<Substitution> match_pattern(const Prop& pattern, const Prop& subject) {
  if (!pattern.is_atom()) {
    if (alpha_eq(pattern, subject)) return Substitution{};
    return std::nullopt;
  }
  if (!subject.is_atom() || pattern.pred() != subject.pred() || pattern.args().size() != subject.args().size())
    return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], s)) return std::nullopt;
  if (!(s.apply(pattern) == subject)) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Redexes

namespace {

void term_redexes(const RewriteSystem& R, const Term& t, Position& pos, const std::function<void(const Position&, const RewriteRule&, const Term&)>& emit) {
  if (t.is_var()) return;
  for (const auto& r : R.rules()) {
    if (r.kind() != RuleKind::Term || r.head() != t.fn()) continue;
    if (auto s = match_pattern(r.term_lhs(), t)) emit(pos, r, s->apply(r.term_rhs()));
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    pos.push_back(i);
    term_redexes(R, t.args()[i], pos, emit);
    pos.pop_back();
  }
}

void prop_redexes(const RewriteSystem& R, const Prop& whole, const Prop& p, Position& pos, std::vector<Redex>& out) {
  switch (p.kind()) {
    case Connective::Atom: {
      for (const auto& r : R.rules()) {
        if (r.kind() != RuleKind::Prop || r.head() != p.pred()) continue;
        if (auto s = match_pattern(r.prop_lhs(), p))
          out.push_back(Redex{pos, r.name(), replace(whole, pos, Expr(s->apply(r.prop_rhs())))});
      }
      for (std::size_t i = 0; i < p.args().size(); ++i) {
        pos.push_back(i);
        term_redexes(R, p.args()[i], pos, [&](const Position& at, const RewriteRule& r, const Term& contractum) {
          out.push_back(Redex{at, r.name(), replace(whole, at, Expr(contractum))});
        });
        pos.pop_back();
      }
      return;
    }
    case Connective::Top:
    case Connective::Bottom:
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      pos.push_back(0);
      prop_redexes(R, whole, p.left(), pos, out);
      pos.back() = 1;
      prop_redexes(R, whole, p.right(), pos, out);
      pos.pop_back();
      return;
    case Connective::Forall:
    case Connective::Exists:
      pos.push_back(0);
      prop_redexes(R, whole, p.body(), pos, out);
      pos.pop_back();
      return;
  }
}

}  // namespace

std::vector<Redex> rewrite_positions(const RewriteSystem& R, const Expr& x) {
  std::vector<Redex> out;
  Position pos;
  if (const auto* t = std::get_if<Term>(&x)) {
    term_redexes(R, *t, pos, [&](const Position& at, const RewriteRule& r, const Term& contractum) {
      out.push_back(Redex{at, r.name(), replace(*t, at, contractum)});
    });
  } else {
    const Prop& p = std::get<Prop>(x);
    prop_redexes(R, p, p, pos, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

Term normal_form(const RewriteSystem& R, const Term& t, Fuel& fuel) {
  if (t.is_var()) return t;
  Term cur = t;
  if (!t.args().empty()) {
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(normal_form(R, a, fuel));
      changed = changed || !(args.back() == a);
    }
    if (changed) cur = Term::app(t.fn(), std::move(args), t.sort());
  }
  for (const auto& r : R.rules()) {
    if (r.kind() != RuleKind::Term || r.head() != cur.fn()) continue;
    if (auto s = match_pattern(r.term_lhs(), cur)) {
      fuel.consume();
      return normal_form(R, s->apply(r.term_rhs()), fuel);
    }
  }
  return cur;
}

namespace {

Prop rewrite_atom_root(const RewriteSystem& R, const Prop& atom, Fuel& fuel, bool& fired) {
  fired = false;
  for (const auto& r : R.rules()) {
    if (r.kind() != RuleKind::Prop || r.head() != atom.pred()) continue;
    if (auto s = match_pattern(r.prop_lhs(), atom)) {
      fuel.consume();
      fired = true;
      return s->apply(r.prop_rhs());
    }
  }
  return atom;
}

Prop normalize_atom_args(const RewriteSystem& R, const Prop& atom, Fuel& fuel) {
  if (atom.args().empty()) return atom;
  std::vector<Term> args;
  bool changed = false;
  for (const auto& a : atom.args()) {
    args.push_back(normal_form(R, a, fuel));
    changed = changed || !(args.back() == a);
  }
  return changed ? Prop::atom(atom.pred(), std::move(args)) : atom;
}

}  // namespace

Prop normal_form(const RewriteSystem& R, const Prop& p, Fuel& fuel) {
  switch (p.kind()) {
    case Connective::Atom: {
      Prop atom = normalize_atom_args(R, p, fuel);
      bool fired = false;
      Prop next = rewrite_atom_root(R, atom, fuel, fired);
      return fired ? normal_form(R, next, fuel) : atom;
    }
    case Connective::Top:
    case Connective::Bottom:
      return p;
    case Connective::And:
    case Connective::Or:
    case Connective::Imp: {
      Prop l = normal_form(R, p.left(), fuel);
      Prop r = normal_form(R, p.right(), fuel);
      if (l == p.left() && r == p.right()) return p;
      return Prop::binary(p.kind(), std::move(l), std::move(r));
    }
    case Connective::Forall:
    case Connective::Exists: {
      Prop b = normal_form(R, p.body(), fuel);
      if (b == p.body()) return p;
      return Prop::quantifier(p.kind(), p.bound(), std::move(b));
    }
  }
  return p;
}

Prop head_normal_form(const RewriteSystem& R, const Prop& p, Fuel& fuel) {
  Prop cur = p;
  while (cur.is_atom() && R.has_prop_rules_for(cur.pred())) {
    Prop atom = normalize_atom_args(R, cur, fuel);
    bool fired = false;
    cur = rewrite_atom_root(R, atom, fuel, fired);
    if (!fired) return atom;
  }
  return cur;
}

Normalized<Term> normalize(const RewriteSystem& R, const Term& t, std::size_t fuel) {
  Fuel f(fuel);
  try {
    Term n = normal_form(R, t, f);
    return {n, f.used()};
  } catch (const FuelExhausted&) {
    return {std::nullopt, f.used()};
  }
}

Normalized<Prop> normalize(const RewriteSystem& R, const Prop& p, std::size_t fuel) {
  Fuel f(fuel);
  try {
    Prop n = normal_form(R, p, f);
    return {n, f.used()};
  } catch (const FuelExhausted&) {
    return {std::nullopt, f.used()};
  }
}

Normalized<Expr> normalize(const RewriteSystem& R, const Expr& x, std::size_t fuel) {
  return std::visit(
      [&](const auto& v) -> Normalized<Expr> {
        auto n = normalize(R, v, fuel);
        if (!n.value) return {std::nullopt, n.steps};
        return {Expr(*n.value), n.steps};
      },
      x);
}

Normalized<Expr> normalize_with(const RewriteSystem& R, const Expr& x, const RedexChooser& choose, std::size_t fuel) {
  Expr cur = x;
  std::size_t steps = 0;
  for (;;) {
    auto redexes = rewrite_positions(R, cur);
    if (redexes.empty()) return {cur, steps};
    if (steps == fuel) return {std::nullopt, steps};
    std::size_t k = choose(redexes);
    cur = redexes.at(k).reduct;
    ++steps;
  }
}

// ---------------------------------------------------------------------------
// Congruence

CongruenceSession::CongruenceSession(const RewriteSystem& R, std::size_t fuel) : R_(R), fuel_(fuel) {}

bool CongruenceSession::congruent(const Prop& a, const Prop& b) {
  Fuel f(fuel_);
  return congruent_props(a, b, f);
}

bool CongruenceSession::congruent(const Term& a, const Term& b) {
  Fuel f(fuel_);
  return congruent_terms(a, b, f);
}

Prop CongruenceSession::head_normal(const Prop& p) {
  if (!p.is_atom()) return p;
  std::string key = to_string(p);
  if (auto it = head_memo_.find(key); it != head_memo_.end()) return it->second;
  Fuel f(fuel_);
  Prop h = head_normal_form(R_, p, f);
  head_memo_.emplace(std::move(key), h);
  return h;
}

std::optional<Prop> CongruenceSession::try_normal(const Prop& p) {
  std::string key = to_string(p);
  if (auto it = normal_memo_.find(key); it != normal_memo_.end()) return it->second;
  auto n = normalize(R_, p, fuel_);
  normal_memo_.emplace(std::move(key), n.value);
  return n.value;
}

namespace {

// Bounded search for a common reduct; the fallback when normalization does
// not terminate within the budget.
bool joinable_terms(const RewriteSystem& R, const Term& a, const Term& b, std::size_t budget) {
  std::unordered_set<std::string> seen_a{to_string(a)}, seen_b{to_string(b)};
  if (seen_b.contains(*seen_a.begin())) return true;
  std::deque<Term> front_a{a}, front_b{b};
  std::size_t spent = 0;
  while (!front_a.empty() || !front_b.empty()) {
    for (int side = 0; side < 2; ++side) {
      auto& front = side == 0 ? front_a : front_b;
      auto& mine = side == 0 ? seen_a : seen_b;
      auto& other = side == 0 ? seen_b : seen_a;
      if (front.empty()) continue;
      Term t = front.front();
      front.pop_front();
      for (const auto& rd : rewrite_positions(R, t)) {
        if (++spent > budget) throw FuelExhausted();
        const Term& next = std::get<Term>(rd.reduct);
        std::string key = to_string(next);
        if (other.contains(key)) return true;
        if (mine.insert(key).second) front.push_back(next);
      }
    }
  }
  return false;
}

}  // namespace

bool CongruenceSession::congruent_terms(const Term& a, const Term& b, Fuel& fuel) {
  if (a == b) return true;
  if (a.sort() != b.sort()) return false;
  try {
    Term na = normal_form(R_, a, fuel);
    Term nb = normal_form(R_, b, fuel);
    return na == nb;
  } catch (const FuelExhausted&) {
    return joinable_terms(R_, a, b, fuel_);
  }
}

bool CongruenceSession::congruent_props(const Prop& a, const Prop& b, Fuel& fuel) {
  if (alpha_eq(a, b)) return true;
  std::string key = to_string(a) + " == " + to_string(b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Prop ha = head_normal_form(R_, a, fuel);
  Prop hb = head_normal_form(R_, b, fuel);
  bool result = false;
  if (ha.kind() == hb.kind()) {
    switch (ha.kind()) {
      case Connective::Atom:
        result = ha.pred() == hb.pred() && ha.args().size() == hb.args().size();
        for (std::size_t i = 0; result && i < ha.args().size(); ++i)
          result = congruent_terms(ha.args()[i], hb.args()[i], fuel);
        break;
      case Connective::Top:
      case Connective::Bottom:
        result = true;
        break;
      case Connective::And:
      case Connective::Or:
      case Connective::Imp:
        result = congruent_props(ha.left(), hb.left(), fuel) && congruent_props(ha.right(), hb.right(), fuel);
        break;
      case Connective::Forall:
      case Connective::Exists: {
        if (ha.bound().sort != hb.bound().sort) break;
        if (ha.bound() == hb.bound()) {
          result = congruent_props(ha.body(), hb.body(), fuel);
          break;
        }
        std::set<std::string> taken;
        collect_names(ha, taken);
        collect_names(hb, taken);
        Var v = fresh_var(ha.bound(), taken);
        Substitution sa, sb;
        sa.bind(ha.bound(), Term::var(v));
        sb.bind(hb.bound(), Term::var(v));
        result = congruent_props(sa.apply(ha.body()), sb.apply(hb.body()), fuel);
        break;
      }
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

Congruence congruent(const RewriteSystem& R, const Expr& a, const Expr& b, std::size_t fuel) {
  if (a.index() != b.index()) throw Error("congruence between a term and a proposition");
  Congruence c;
  c.trusted = R.flags().convergent();
  CongruenceSession session(R, fuel);
  try {
    bool r = std::holds_alternative<Term>(a) ? session.congruent(std::get<Term>(a), std::get<Term>(b))
                                             : session.congruent(std::get<Prop>(a), std::get<Prop>(b));
    c.verdict = r ? CongruenceVerdict::Congruent : CongruenceVerdict::NotCongruent;
  } catch (const FuelExhausted&) {
    c.verdict = CongruenceVerdict::FuelExhausted;
  }
  auto na = normalize(R, a, fuel);
  auto nb = normalize(R, b, fuel);
  c.lhs_normal = na.value ? to_string(*na.value) : "<fuel exhausted>";
  c.rhs_normal = nb.value ? to_string(*nb.value) : "<fuel exhausted>";
  return c;
}

// ---------------------------------------------------------------------------
// Critical pairs

namespace {

void nonvar_positions(const Term& t, Position& pos, std::vector<Position>& out) {
  if (t.is_var()) return;
  out.push_back(pos);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    pos.push_back(i);
    nonvar_positions(t.args()[i], pos, out);
    pos.pop_back();
  }
}

std::set<std::string> rule_names_taken(const RewriteRule& r) {
  std::set<std::string> taken;
  std::visit([&](const auto& x) { collect_names(x, taken); }, r.lhs());
  std::visit([&](const auto& x) { collect_names(x, taken); }, r.rhs());
  return taken;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const RewriteSystem& R) {
  std::vector<CriticalPair> out;
  const auto& rules = R.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RewriteRule& outer = rules[i];
    for (std::size_t j = 0; j < rules.size(); ++j) {
      std::set<std::string> taken = rule_names_taken(outer);
      RewriteRule inner = rules[j].renamed_apart(taken);
      if (outer.kind() == RuleKind::Term) {
        if (inner.kind() != RuleKind::Term) continue;
        std::vector<Position> positions;
        Position pos;
        nonvar_positions(outer.term_lhs(), pos, positions);
        for (const auto& p : positions) {
          if (p.empty() && i == j) continue;
          auto theta = unify_syntactic(subterm(outer.term_lhs(), p), inner.term_lhs());
          if (!theta) continue;
          Term peak = theta->apply(outer.term_lhs());
          out.push_back(CriticalPair{outer.name(), inner.name(), p, peak, theta->apply(outer.term_rhs()),
                                     replace(peak, p, theta->apply(inner.term_rhs())), Joinability::Unchecked});
        }
      } else {
        const Prop& lhs = outer.prop_lhs();
        if (inner.kind() == RuleKind::Prop) {
          if (i == j) continue;
          auto theta = unify_syntactic(lhs, inner.prop_lhs());
          if (!theta) continue;
          Prop peak = theta->apply(lhs);
          out.push_back(CriticalPair{outer.name(), inner.name(), {}, peak, theta->apply(outer.prop_rhs()),
                                     theta->apply(inner.prop_rhs()), Joinability::Unchecked});
          continue;
        }
        for (std::size_t k = 0; k < lhs.args().size(); ++k) {
          std::vector<Position> positions;
          Position pos;
          nonvar_positions(lhs.args()[k], pos, positions);
          for (auto p : positions) {
            auto theta = unify_syntactic(subterm(lhs.args()[k], p), inner.term_lhs());
            if (!theta) continue;
            p.insert(p.begin(), k);
            Prop peak = theta->apply(lhs);
            out.push_back(CriticalPair{outer.name(), inner.name(), p, peak, theta->apply(outer.prop_rhs()),
                                       replace(peak, p, Expr(theta->apply(inner.term_rhs()))),
                                       Joinability::Unchecked});
          }
        }
      }
    }
  }
  return out;
}

ConfluenceReport check_local_confluence(RewriteSystem& R, std::size_t fuel) {
  ConfluenceReport report;
  for (auto cp : critical_pairs(R)) {
    auto a = normalize(R, cp.outer_reduct, fuel);
    auto b = normalize(R, cp.inner_reduct, fuel);
    if (!a.value || !b.value) {
      cp.joinable = Joinability::UnknownAtFuel;
      report.unknowns.push_back(std::move(cp));
    } else if (alpha_eq(*a.value, *b.value)) {
      cp.joinable = Joinability::Yes;
      report.joinable.push_back(std::move(cp));
    } else {
      cp.joinable = Joinability::No;
      report.failures.push_back(std::move(cp));
    }
  }
  R.flags().locally_confluent = report.locally_confluent();
  return report;
}

// ---------------------------------------------------------------------------
// Lexicographic path order

namespace {

struct LTerm {
  bool is_var = false;
  Var var;
  std::string symbol;
  std::vector<LTerm> args;

  friend bool operator==(const LTerm&, const LTerm&) = default;
};

LTerm lterm(const Term& t) {
  if (t.is_var()) return LTerm{true, t.as_var(), {}, {}};
  LTerm out{false, {}, t.fn(), {}};
  for (const auto& a : t.args()) out.args.push_back(lterm(a));
  return out;
}

// Bound variables become constants of the lowest rank.
LTerm lterm(const Prop& p, std::size_t& binder_counter) {
  switch (p.kind()) {
    case Connective::Atom: {
      LTerm out{false, {}, p.pred(), {}};
      for (const auto& a : p.args()) out.args.push_back(lterm(a));
      return out;
    }
    case Connective::Top: return LTerm{false, {}, "#top", {}};
    case Connective::Bottom: return LTerm{false, {}, "#bot", {}};
    case Connective::And:
    case Connective::Or:
    case Connective::Imp: {
      const char* sym = p.kind() == Connective::And ? "#and" : p.kind() == Connective::Or ? "#or" : "#imp";
      return LTerm{false, {}, sym, {lterm(p.left(), binder_counter), lterm(p.right(), binder_counter)}};
    }
    case Connective::Forall:
    case Connective::Exists: {
      std::string constant = "#bound" + std::to_string(binder_counter++);
      Substitution s;
      s.bind(p.bound(), Term::app(constant, {}, p.bound().sort));
      const char* sym = p.kind() == Connective::Forall ? "#forall" : "#exists";
      return LTerm{false, {}, sym, {lterm(s.apply(p.body()), binder_counter)}};
    }
  }
  return {};
}

LTerm lterm(const Expr& e) {
  std::size_t counter = 0;
  if (const auto* t = std::get_if<Term>(&e)) return lterm(*t);
  return lterm(std::get<Prop>(e), counter);
}

bool occurs_in(const Var& v, const LTerm& t) {
  if (t.is_var) return t.var == v;
  return std::any_of(t.args.begin(), t.args.end(), [&](const LTerm& a) { return occurs_in(v, a); });
}

class Lpo {
 public:
  Lpo(const std::vector<std::string>& precedence, LexStatus status) : status_(status) {
    static const char* connectives[] = {"#exists", "#forall", "#imp", "#or", "#and", "#bot", "#top"};
    long rank = 2;
    for (const char* c : connectives) rank_[c] = rank++;
    for (auto it = precedence.rbegin(); it != precedence.rend(); ++it) rank_.insert_or_assign(*it, rank++);
  }

  bool greater(const LTerm& s, const LTerm& t) const {
    if (t.is_var) return !s.is_var && occurs_in(t.var, s);
    if (s.is_var) return false;
    for (const auto& si : s.args)
      if (si == t || greater(si, t)) return true;
    auto dominates_args = [&] {
      return std::all_of(t.args.begin(), t.args.end(), [&](const LTerm& tj) { return greater(s, tj); });
    };
    if (s.symbol == t.symbol && s.args.size() == t.args.size()) {
      const std::size_t n = s.args.size();
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = status_ == LexStatus::LeftToRight ? k : n - 1 - k;
        if (s.args[i] == t.args[i]) continue;
        return greater(s.args[i], t.args[i]) && dominates_args();
      }
      return false;
    }
    if (symbol_greater(s.symbol, t.symbol)) return dominates_args();
    return false;
  }

 private:
  long rank(const std::string& sym) const {
    if (sym.starts_with("#bound")) return 0;
    auto it = rank_.find(sym);
    return it == rank_.end() ? -1 : it->second;
  }

  bool symbol_greater(const std::string& f, const std::string& g) const {
    long rf = rank(f), rg = rank(g);
    if (rf < 0 || rg < 0) return false;
    return rf > rg;
  }

  LexStatus status_;
  std::unordered_map<std::string, long> rank_;
};

}  // namespace

bool lpo_greater(const Expr& s, const Expr& t, const std::vector<std::string>& precedence, LexStatus status) {
  return Lpo(precedence, status).greater(lterm(s), lterm(t));
}

TerminationReport check_termination_lpo(RewriteSystem& R, const std::vector<std::string>& precedence) {
  TerminationReport report;
  for (LexStatus status : {LexStatus::LeftToRight, LexStatus::RightToLeft}) {
    Lpo order(precedence, status);
    std::vector<std::string> unoriented;
    for (const auto& r : R.rules())
      if (!order.greater(lterm(r.lhs()), lterm(r.rhs()))) unoriented.push_back(r.name());
    if (status == LexStatus::LeftToRight || unoriented.size() < report.unoriented.size()) {
      report.unoriented = std::move(unoriented);
      report.status = status;
    }
    if (report.unoriented.empty()) break;
  }
  report.terminating = report.unoriented.empty();
  if (report.terminating) R.flags().termination = TerminationEvidence::Lpo;
  return report;
}

bool check_nonconfusing(RewriteSystem& R) {
  bool ok = std::all_of(R.rules().begin(), R.rules().end(), [](const RewriteRule& r) {
    return r.kind() == RuleKind::Term ? !r.term_lhs().is_var() : r.prop_lhs().is_atom();
  });
  R.flags().non_confusing = ok;
  return ok;
}

}  // namespace dedmod
