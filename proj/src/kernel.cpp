#include "dedmod/kernel.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dedmod {

// ---------------------------------------------------------------------------
// Rule tags

namespace {

struct TagInfo {
  RuleTag tag;
  const char* name;
  RuleShape shape;
};

constexpr TagInfo kTags[] = {
    {RuleTag::Axiom, "axiom", {0, 1, false, false}},
    {RuleTag::TopIntro, "top_i", {0, 0, false, false}},
    {RuleTag::BottomElim, "bot_e", {1, 0, false, false}},
    {RuleTag::AndIntro, "and_i", {2, 0, false, false}},
    {RuleTag::AndElimLeft, "and_e_l", {1, 0, false, false}},
    {RuleTag::AndElimRight, "and_e_r", {1, 0, false, false}},
    {RuleTag::OrIntroLeft, "or_i_l", {1, 0, false, false}},
    {RuleTag::OrIntroRight, "or_i_r", {1, 0, false, false}},
    {RuleTag::OrElim, "or_e", {3, 2, false, false}},
    {RuleTag::ImpIntro, "imp_i", {1, 1, false, false}},
    {RuleTag::ImpElim, "imp_e", {2, 0, false, false}},
    {RuleTag::ForallIntro, "forall_i", {1, 0, false, true}},
    {RuleTag::ForallElim, "forall_e", {1, 0, true, false}},
    {RuleTag::ExistsIntro, "exists_i", {1, 0, true, false}},
    {RuleTag::ExistsElim, "exists_e", {2, 1, false, true}},
};

const TagInfo& info(RuleTag tag) {
  for (const auto& t : kTags)
    if (t.tag == tag) return t;
  throw Error("unknown rule tag");
}

}  // namespace

const char* tag_name(RuleTag tag) { return info(tag).name; }

std::optional<RuleTag> tag_from_name(const std::string& name) {
  for (const auto& t : kTags)
    if (name == t.name) return t.tag;
  return std::nullopt;
}

RuleShape shape_of(RuleTag tag) { return info(tag).shape; }

bool is_introduction(RuleTag tag) {
  switch (tag) {
    case RuleTag::TopIntro:
    case RuleTag::AndIntro:
    case RuleTag::OrIntroLeft:
    case RuleTag::OrIntroRight:
    case RuleTag::ImpIntro:
    case RuleTag::ForallIntro:
    case RuleTag::ExistsIntro:
      return true;
    default:
      return false;
  }
}

bool is_elimination(RuleTag tag) {
  switch (tag) {
    case RuleTag::BottomElim:
    case RuleTag::AndElimLeft:
    case RuleTag::AndElimRight:
    case RuleTag::OrElim:
    case RuleTag::ImpElim:
    case RuleTag::ForallElim:
    case RuleTag::ExistsElim:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Proof trees

ProofTree ProofTree::make(RuleTag tag, std::vector<ProofTree> children, std::vector<std::string> labels,
                          std::optional<Term> witness, std::optional<Var> eigenvariable,
                          std::optional<Prop> conclusion) {
  RuleShape shape = shape_of(tag);
  std::string name = tag_name(tag);
  if (children.size() != shape.children)
    throw Error(name + " expects " + std::to_string(shape.children) + " premise(s), got " +
                std::to_string(children.size()));
  if (labels.size() != shape.labels)
    throw Error(name + " expects " + std::to_string(shape.labels) + " hypothesis label(s), got " +
                std::to_string(labels.size()));
  if (shape.witness != witness.has_value())
    throw Error(name + (shape.witness ? " requires a witness term" : " takes no witness term"));
  if (shape.eigenvariable != eigenvariable.has_value())
    throw Error(name + (shape.eigenvariable ? " requires an eigenvariable" : " takes no eigenvariable"));
  for (const auto& c : children)
    if (!c.valid()) throw Error(name + ": empty premise");
  auto n = std::make_shared<ProofNode>();
  n->tag = tag;
  n->children = std::move(children);
  n->labels = std::move(labels);
  n->witness = std::move(witness);
  n->eigenvariable = std::move(eigenvariable);
  n->conclusion = std::move(conclusion);
  return ProofTree(std::move(n));
}

RuleTag ProofTree::tag() const { return node_->tag; }
const std::optional<Prop>& ProofTree::conclusion() const { return node_->conclusion; }
const std::vector<std::string>& ProofTree::labels() const { return node_->labels; }
const std::optional<Term>& ProofTree::witness() const { return node_->witness; }
const std::optional<Var>& ProofTree::eigenvariable() const { return node_->eigenvariable; }
const std::vector<ProofTree>& ProofTree::children() const { return node_->children; }

std::size_t ProofTree::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

ProofTree ProofTree::with_conclusion(std::optional<Prop> c) const {
  auto n = std::make_shared<ProofNode>(*node_);
  n->conclusion = std::move(c);
  return ProofTree(std::move(n));
}

ProofTree ProofTree::with_children(std::vector<ProofTree> children) const {
  return make(tag(), std::move(children), labels(), witness(), eigenvariable(), conclusion());
}

ProofTree ProofTree::with_labels(std::vector<std::string> labels) const {
  return make(tag(), children(), std::move(labels), witness(), eigenvariable(), conclusion());
}

ProofTree ProofTree::with_payload(std::optional<Term> witness, std::optional<Var> eigenvariable) const {
  return make(tag(), children(), labels(), std::move(witness), std::move(eigenvariable), conclusion());
}

bool operator==(const ProofTree& a, const ProofTree& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.tag() != b.tag() || a.labels() != b.labels() || a.eigenvariable() != b.eigenvariable()) return false;
  if (a.witness().has_value() != b.witness().has_value()) return false;
  if (a.witness() && !(*a.witness() == *b.witness())) return false;
  if (a.conclusion().has_value() != b.conclusion().has_value()) return false;
  if (a.conclusion() && !alpha_eq(*a.conclusion(), *b.conclusion())) return false;
  return a.children() == b.children();
}

ProofTree subproof(const ProofTree& p, const Position& pos) {
  ProofTree cur = p;
  for (std::size_t i : pos) {
    if (i >= cur.children().size()) throw Error("invalid proof position " + to_string(pos));
    cur = cur.children()[i];
  }
  return cur;
}

namespace {

ProofTree replace_from(const ProofTree& p, const Position& pos, std::size_t k, const ProofTree& by) {
  if (k == pos.size()) return by;
  if (pos[k] >= p.children().size()) throw Error("invalid proof position " + to_string(pos));
  std::vector<ProofTree> children = p.children();
  children[pos[k]] = replace_from(children[pos[k]], pos, k + 1, by);
  return p.with_children(std::move(children));
}

}  // namespace

ProofTree replace_subproof(const ProofTree& p, const Position& pos, const ProofTree& by) {
  return replace_from(p, pos, 0, by);
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.context.size(); ++i) {
    if (i) out += ", ";
    out += s.context[i].label + ": " + to_string(s.context[i].formula);
  }
  return out + (out.empty() ? "|- " : " |- ") + to_string(s.conclusion);
}

// ---------------------------------------------------------------------------
// Label and term substitution

namespace {

// Index of the child bound by each label of a binder rule, or -1.
int bound_child(RuleTag tag, std::size_t label_index) {
  switch (tag) {
    case RuleTag::ImpIntro: return 0;
    case RuleTag::OrElim: return static_cast<int>(label_index) + 1;
    case RuleTag::ExistsElim: return 1;
    default: return -1;
  }
}

// Label bound over child `c`, if any.
const std::string* binder_for_child(const ProofTree& p, std::size_t c) {
  for (std::size_t l = 0; l < p.labels().size(); ++l)
    if (p.tag() != RuleTag::Axiom && bound_child(p.tag(), l) == static_cast<int>(c)) return &p.labels()[l];
  return nullptr;
}

// Children inside the scope of the node's eigenvariable.
bool in_eigen_scope(RuleTag tag, std::size_t c) {
  return (tag == RuleTag::ForallIntro && c == 0) || (tag == RuleTag::ExistsElim && c == 1);
}

void free_labels_into(const ProofTree& p, std::set<std::string>& bound, std::set<std::string>& out) {
  if (p.tag() == RuleTag::Axiom) {
    if (!bound.contains(p.labels()[0])) out.insert(p.labels()[0]);
    return;
  }
  for (std::size_t c = 0; c < p.children().size(); ++c) {
    const std::string* b = binder_for_child(p, c);
    bool added = b && bound.insert(*b).second;
    free_labels_into(p.children()[c], bound, out);
    if (added) bound.erase(*b);
  }
}

void all_labels(const ProofTree& p, std::set<std::string>& out) {
  out.insert(p.labels().begin(), p.labels().end());
  for (const auto& c : p.children()) all_labels(c, out);
}

std::string fresh_label(const std::string& base, const std::set<std::string>& taken) { return fresh_name(base, taken); }

// Renames free occurrences of label `from` to `to`, keeping stated conclusions.
ProofTree rename_free_label(const ProofTree& p, const std::string& from, const std::string& to) {
  if (p.tag() == RuleTag::Axiom) return p.labels()[0] == from ? p.with_labels({to}) : p;
  std::vector<ProofTree> children;
  bool changed = false;
  for (std::size_t c = 0; c < p.children().size(); ++c) {
    const std::string* b = binder_for_child(p, c);
    if (b && *b == from) {
      children.push_back(p.children()[c]);
      continue;
    }
    children.push_back(rename_free_label(p.children()[c], from, to));
    changed = changed || !(children.back() == p.children()[c]);
  }
  return changed ? p.with_children(std::move(children)) : p;
}

void names_into(const ProofTree& p, std::set<std::string>& out) {
  if (p.conclusion()) collect_names(*p.conclusion(), out);
  if (p.witness()) collect_names(*p.witness(), out);
  if (p.eigenvariable()) out.insert(p.eigenvariable()->name);
  for (const auto& c : p.children()) names_into(c, out);
}

ProofTree subst_terms(const ProofTree& p, const Substitution& s, const std::set<std::string>& avoid,
                      std::set<std::string>& taken) {
  std::optional<Prop> conclusion;
  if (p.conclusion()) conclusion = s.apply(*p.conclusion());
  std::optional<Term> witness;
  if (p.witness()) witness = s.apply(*p.witness());
  std::optional<Var> eigen = p.eigenvariable();
  Substitution scoped = s;
  if (eigen) {
    std::set<Var> range = s.range_vars();
    bool clash = s.lookup(*eigen) != nullptr || range.contains(*eigen) || avoid.contains(eigen->name);
    if (clash) {
      Var renamed = fresh_var(*eigen, taken);
      taken.insert(renamed.name);
      scoped.bind(*eigen, Term::var(renamed));
      eigen = renamed;
    }
  }
  std::vector<ProofTree> children;
  for (std::size_t c = 0; c < p.children().size(); ++c)
    children.push_back(subst_terms(p.children()[c], in_eigen_scope(p.tag(), c) ? scoped : s, avoid, taken));
  return ProofTree::make(p.tag(), std::move(children), p.labels(), witness, eigen, conclusion);
}

ProofTree rename_eigens_avoiding(const ProofTree& p, const std::set<std::string>& avoid) {
  std::set<std::string> taken = proof_names(p);
  taken.insert(avoid.begin(), avoid.end());
  return subst_terms(p, Substitution{}, avoid, taken);
}

ProofTree subst_hyp(const ProofTree& p, const std::string& label, const ProofTree& by,
                    const std::set<std::string>& by_free, std::set<std::string>& taken) {
  if (p.tag() == RuleTag::Axiom) return p.labels()[0] == label ? by : p;
  std::vector<ProofTree> children;
  std::vector<std::string> labels = p.labels();
  for (std::size_t c = 0; c < p.children().size(); ++c) {
    ProofTree child = p.children()[c];
    for (std::size_t l = 0; l < labels.size(); ++l) {
      if (bound_child(p.tag(), l) != static_cast<int>(c)) continue;
      if (labels[l] == label) goto keep;  // shadowed
      if (by_free.contains(labels[l]) && free_labels(child).contains(label)) {
        std::string renamed = fresh_label(labels[l], taken);
        taken.insert(renamed);
        child = rename_free_label(child, labels[l], renamed);
        labels[l] = renamed;
      }
    }
    child = subst_hyp(child, label, by, by_free, taken);
  keep:
    children.push_back(std::move(child));
  }
  return ProofTree::make(p.tag(), std::move(children), std::move(labels), p.witness(), p.eigenvariable(),
                         p.conclusion());
}

}  // namespace

std::set<std::string> free_labels(const ProofTree& proof) {
  std::set<std::string> bound, out;
  free_labels_into(proof, bound, out);
  return out;
}

std::set<std::string> proof_names(const ProofTree& proof) {
  std::set<std::string> out;
  names_into(proof, out);
  return out;
}

ProofTree substitute_terms(const ProofTree& proof, const Substitution& s) {
  std::set<std::string> taken = proof_names(proof);
  for (const auto& [v, t] : s.bindings()) {
    taken.insert(v.name);
    collect_names(t, taken);
  }
  return subst_terms(proof, s, {}, taken);
}

ProofTree substitute_hypothesis(const ProofTree& proof, const std::string& label, const ProofTree& by) {
  ProofTree target = rename_eigens_avoiding(proof, proof_names(by));
  std::set<std::string> taken;
  all_labels(target, taken);
  all_labels(by, taken);
  return subst_hyp(target, label, by, free_labels(by), taken);
}

// ---------------------------------------------------------------------------
// Checking

namespace {

struct CheckFailure {
  CheckErrorKind kind;
  Position position;
  std::string message;
};

class Checker {
 public:
  Checker(const Theory& theory, std::size_t fuel) : theory_(theory), session_(theory.rules, fuel) {}

  ProofTree check(const ProofTree& node, const std::optional<Prop>& expected) {
    const RuleTag tag = node.tag();
    if (node.conclusion()) {
      if (auto wf = wellformed(theory_.signature, *node.conclusion()); !wf)
        fail(CheckErrorKind::IllFormed, "stated conclusion " + to_string(*node.conclusion()) + ": " + wf.message);
      if (expected) require_congruent(*node.conclusion(), *expected, "stated conclusion");
    }
    std::optional<Prop> target = node.conclusion() ? node.conclusion() : expected;
    auto need_target = [&]() -> const Prop& {
      if (!target)
        fail(CheckErrorKind::MissingConclusion,
             std::string(tag_name(tag)) + " needs a stated conclusion in this position");
      return *target;
    };
    std::vector<ProofTree> kids;
    Prop result;

    switch (tag) {
      case RuleTag::Axiom: {
        const Hypothesis* h = lookup(node.labels()[0]);
        if (!h) fail(CheckErrorKind::UnknownHypothesis, "no hypothesis labelled \"" + node.labels()[0] + "\"");
        if (target) require_congruent(h->formula, *target, "hypothesis " + node.labels()[0]);
        result = target ? *target : h->formula;
        break;
      }
      case RuleTag::TopIntro: {
        expect_shape(need_target(), Connective::Top);
        result = *target;
        break;
      }
      case RuleTag::BottomElim: {
        result = need_target();
        kids.push_back(child(node, 0, Prop::bottom()));
        break;
      }
      case RuleTag::AndIntro: {
        Prop w = expect_shape(need_target(), Connective::And);
        kids.push_back(child(node, 0, w.left()));
        kids.push_back(child(node, 1, w.right()));
        result = *target;
        break;
      }
      case RuleTag::AndElimLeft:
      case RuleTag::AndElimRight: {
        kids.push_back(child(node, 0, std::nullopt));
        Prop w = expect_shape_at(*kids[0].conclusion(), Connective::And, 0);
        result = settle(tag == RuleTag::AndElimLeft ? w.left() : w.right(), target);
        break;
      }
      case RuleTag::OrIntroLeft:
      case RuleTag::OrIntroRight: {
        Prop w = expect_shape(need_target(), Connective::Or);
        kids.push_back(child(node, 0, tag == RuleTag::OrIntroLeft ? w.left() : w.right()));
        result = *target;
        break;
      }
      case RuleTag::OrElim: {
        const Prop& goal = need_target();
        kids.push_back(child(node, 0, std::nullopt));
        Prop w = expect_shape_at(*kids[0].conclusion(), Connective::Or, 0);
        kids.push_back(child_with(node, 1, goal, Hypothesis{node.labels()[0], w.left()}));
        kids.push_back(child_with(node, 2, goal, Hypothesis{node.labels()[1], w.right()}));
        result = goal;
        break;
      }
      case RuleTag::ImpIntro: {
        Prop w = expect_shape(need_target(), Connective::Imp);
        kids.push_back(child_with(node, 0, w.right(), Hypothesis{node.labels()[0], w.left()}));
        result = *target;
        break;
      }
      case RuleTag::ImpElim: {
        kids.push_back(child(node, 0, std::nullopt));
        Prop w = expect_shape_at(*kids[0].conclusion(), Connective::Imp, 0);
        kids.push_back(child(node, 1, w.left()));
        result = settle(w.right(), target);
        break;
      }
      case RuleTag::ForallIntro: {
        Prop w = expect_shape(need_target(), Connective::Forall);
        const Var& x = *node.eigenvariable();
        check_eigen_sort(x, w.bound());
        check_fresh(x, {w}, "the universal statement");
        kids.push_back(child(node, 0, instantiate(w, Term::var(x))));
        result = *target;
        break;
      }
      case RuleTag::ForallElim: {
        const Term& t = *node.witness();
        check_witness(t);
        kids.push_back(child(node, 0, std::nullopt));
        Prop w = expect_shape_at(*kids[0].conclusion(), Connective::Forall, 0);
        if (w.bound().sort != t.sort())
          fail(CheckErrorKind::RuleMismatch, "witness " + to_string(t) + " has sort " + t.sort() + ", expected " +
                                                 w.bound().sort);
        result = settle(instantiate(w, t), target);
        break;
      }
      case RuleTag::ExistsIntro: {
        Prop w = expect_shape(need_target(), Connective::Exists);
        const Term& t = *node.witness();
        check_witness(t);
        if (w.bound().sort != t.sort())
          fail(CheckErrorKind::RuleMismatch, "witness " + to_string(t) + " has sort " + t.sort() + ", expected " +
                                                 w.bound().sort);
        kids.push_back(child(node, 0, instantiate(w, t)));
        result = *target;
        break;
      }
      case RuleTag::ExistsElim: {
        const Prop& goal = need_target();
        kids.push_back(child(node, 0, std::nullopt));
        Prop w = expect_shape_at(*kids[0].conclusion(), Connective::Exists, 0);
        const Var& x = *node.eigenvariable();
        check_eigen_sort(x, w.bound());
        check_fresh(x, {w, goal}, "the existential statement or the conclusion");
        kids.push_back(child_with(node, 1, goal, Hypothesis{node.labels()[0], instantiate(w, Term::var(x))}));
        result = goal;
        break;
      }
    }
    return ProofTree::make(tag, std::move(kids), node.labels(), node.witness(), node.eigenvariable(), result);
  }

  void push(Hypothesis h) { context_.push_back(std::move(h)); }
  Position& position() { return position_; }

  [[noreturn]] void fail(CheckErrorKind kind, std::string message) {
    throw CheckFailure{kind, position_, std::move(message)};
  }

  bool congruent(const Prop& a, const Prop& b) {
    try {
      return session_.congruent(a, b);
    } catch (const FuelExhausted&) {
      fail(CheckErrorKind::FuelExhausted, "congruence of " + to_string(a) + " and " + to_string(b) +
                                              " undecided within fuel");
    }
  }

 private:
  const Hypothesis* lookup(const std::string& label) const {
    for (auto it = context_.rbegin(); it != context_.rend(); ++it)
      if (it->label == label) return &*it;
    return nullptr;
  }

  ProofTree child(const ProofTree& node, std::size_t i, const std::optional<Prop>& expected) {
    position_.push_back(i);
    ProofTree out = check(node.children()[i], expected);
    position_.pop_back();
    return out;
  }

  ProofTree child_with(const ProofTree& node, std::size_t i, const Prop& expected, Hypothesis h) {
    context_.push_back(std::move(h));
    ProofTree out = child(node, i, expected);
    context_.pop_back();
    return out;
  }

  Prop head(const Prop& p) {
    try {
      return session_.head_normal(p);
    } catch (const FuelExhausted&) {
      fail(CheckErrorKind::FuelExhausted, "head normal form of " + to_string(p) + " not reached within fuel");
    }
  }

  Prop expect_shape(const Prop& p, Connective c) {
    Prop w = head(p);
    if (w.kind() != c)
      fail(CheckErrorKind::RuleMismatch, std::string("rule needs a ") + connective_name(c) + ", but " + to_string(p) +
                                             " is not congruent to one");
    return w;
  }

  Prop expect_shape_at(const Prop& p, Connective c, std::size_t child_index) {
    position_.push_back(child_index);
    Prop w = expect_shape(p, c);
    position_.pop_back();
    return w;
  }

  // Conclusion of an elimination: the synthesized formula, or the target when
  // one is imposed and congruent.
  Prop settle(const Prop& synthesized, const std::optional<Prop>& target) {
    if (!target) return synthesized;
    require_congruent(synthesized, *target, "conclusion");
    return *target;
  }

  void require_congruent(const Prop& a, const Prop& b, const std::string& what) {
    if (congruent(a, b)) return;
    auto na = session_.try_normal(a);
    auto nb = session_.try_normal(b);
    fail(CheckErrorKind::CongruenceFailure, what + ": " + to_string(a) + " is not congruent to " + to_string(b) +
                                                " (normal forms " + (na ? to_string(*na) : "<fuel exhausted>") +
                                                " and " + (nb ? to_string(*nb) : "<fuel exhausted>") + ")");
  }

  static const char* connective_name(Connective c) {
    switch (c) {
      case Connective::Top: return "truth";
      case Connective::And: return "conjunction";
      case Connective::Or: return "disjunction";
      case Connective::Imp: return "implication";
      case Connective::Forall: return "universal";
      case Connective::Exists: return "existential";
      default: return "formula";
    }
  }

  static Prop instantiate(const Prop& quantified, const Term& t) {
    Substitution s;
    s.bind(quantified.bound(), t);
    return s.apply(quantified.body());
  }

  void check_eigen_sort(const Var& x, const Var& bound) {
    if (x.sort != bound.sort)
      fail(CheckErrorKind::RuleMismatch, "eigenvariable " + to_string(x) + " has the wrong sort, expected " + bound.sort);
    if (!theory_.signature.has_sort(x.sort)) fail(CheckErrorKind::IllFormed, "undeclared sort " + x.sort);
  }

  void check_witness(const Term& t) {
    if (auto wf = wellformed(theory_.signature, t); !wf)
      fail(CheckErrorKind::IllFormed, "witness " + to_string(t) + ": " + wf.message);
  }

  bool free_in_normal(const Var& x, const Prop& p) {
    auto n = session_.try_normal(p);
    return free_vars(n ? *n : p).contains(x);
  }

  void check_fresh(const Var& x, std::vector<Prop> also, const std::string& what) {
    for (const auto& h : context_)
      if (free_in_normal(x, h.formula))
        fail(CheckErrorKind::EigenvariableViolation,
             "eigenvariable " + x.name + " occurs free in hypothesis " + h.label);
    for (const auto& p : also)
      if (free_in_normal(x, p))
        fail(CheckErrorKind::EigenvariableViolation, "eigenvariable " + x.name + " occurs free in " + what);
  }

  const Theory& theory_;
  CongruenceSession session_;
  std::vector<Hypothesis> context_;
  Position position_;
};

}  // namespace

CheckResult check_proof(const Theory& theory, const ProofTree& proof, const Sequent& goal, std::size_t fuel) {
  CheckResult result;
  if (!proof.valid()) {
    result.error = CheckErrorKind::IllFormed;
    result.message = "empty proof";
    return result;
  }
  if (auto wf = wellformed(theory.signature, goal.conclusion); !wf) {
    result.error = CheckErrorKind::IllFormed;
    result.message = "goal: " + wf.message;
    return result;
  }
  Checker checker(theory, fuel);
  std::set<std::string> labels;
  for (const auto& h : goal.context) {
    if (auto wf = wellformed(theory.signature, h.formula); !wf) {
      result.error = CheckErrorKind::IllFormed;
      result.message = "hypothesis " + h.label + ": " + wf.message;
      return result;
    }
    if (!labels.insert(h.label).second) {
      result.error = CheckErrorKind::IllFormed;
      result.message = "duplicate hypothesis label " + h.label;
      return result;
    }
    checker.push(h);
  }
  try {
    result.elaborated = checker.check(proof, goal.conclusion);
    result.ok = true;
  } catch (const CheckFailure& f) {
    result.error = f.kind;
    result.failing_node = f.position;
    result.message = f.message;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Cuts

namespace {

bool matches_intro(RuleTag elim, RuleTag intro) {
  switch (elim) {
    case RuleTag::AndElimLeft:
    case RuleTag::AndElimRight: return intro == RuleTag::AndIntro;
    case RuleTag::OrElim: return intro == RuleTag::OrIntroLeft || intro == RuleTag::OrIntroRight;
    case RuleTag::ImpElim: return intro == RuleTag::ImpIntro;
    case RuleTag::ForallElim: return intro == RuleTag::ForallIntro;
    case RuleTag::ExistsElim: return intro == RuleTag::ExistsIntro;
    default: return false;
  }
}

Connective intro_connective(RuleTag intro) {
  switch (intro) {
    case RuleTag::AndIntro: return Connective::And;
    case RuleTag::OrIntroLeft:
    case RuleTag::OrIntroRight: return Connective::Or;
    case RuleTag::ImpIntro: return Connective::Imp;
    case RuleTag::ForallIntro: return Connective::Forall;
    case RuleTag::ExistsIntro: return Connective::Exists;
    default: return Connective::Top;
  }
}

void collect_cuts(const ProofTree& p, Position& pos, CongruenceSession& session, std::vector<Cut>& out) {
  for (std::size_t i = 0; i < p.children().size(); ++i) {
    pos.push_back(i);
    collect_cuts(p.children()[i], pos, session, out);
    pos.pop_back();
  }
  if (!is_elimination(p.tag()) || p.children().empty()) return;
  const ProofTree& major = p.children()[0];
  if (!matches_intro(p.tag(), major.tag())) return;
  // In a checked proof the intro's conclusion has the matching head modulo
  // the congruence; an unchecked tree with a mismatching head is no cut.
  if (major.conclusion() && session.head_normal(*major.conclusion()).kind() != intro_connective(major.tag())) return;
  out.push_back(Cut{pos, major.tag(), p.tag()});
}

}  // namespace

std::vector<Cut> find_cuts(const Theory& theory, const ProofTree& proof, std::size_t fuel) {
  CongruenceSession session(theory.rules, fuel);
  std::vector<Cut> out;
  Position pos;
  collect_cuts(proof, pos, session, out);
  return out;
}

ProofTree reduce_cut(const Theory& /*theory*/, const ProofTree& proof, const Position& position) {
  ProofTree node = subproof(proof, position);
  if (!is_elimination(node.tag()) || node.children().empty() || !matches_intro(node.tag(), node.children()[0].tag()))
    throw Error("no cut at position " + to_string(position));
  const ProofTree& intro = node.children()[0];
  ProofTree result;
  switch (node.tag()) {
    case RuleTag::AndElimLeft:
      result = intro.children()[0];
      break;
    case RuleTag::AndElimRight:
      result = intro.children()[1];
      break;
    case RuleTag::ImpElim:
      result = substitute_hypothesis(intro.children()[0], intro.labels()[0], node.children()[1]);
      break;
    case RuleTag::OrElim: {
      std::size_t branch = intro.tag() == RuleTag::OrIntroLeft ? 1 : 2;
      result = substitute_hypothesis(node.children()[branch], node.labels()[branch - 1], intro.children()[0]);
      break;
    }
    case RuleTag::ForallElim: {
      Substitution s;
      s.bind(*intro.eigenvariable(), *node.witness());
      result = substitute_terms(intro.children()[0], s);
      break;
    }
    case RuleTag::ExistsElim: {
      Substitution s;
      s.bind(*node.eigenvariable(), *intro.witness());
      ProofTree body = substitute_terms(node.children()[1], s);
      result = substitute_hypothesis(body, node.labels()[0], intro.children()[0]);
      break;
    }
    default:
      throw Error("no cut at position " + to_string(position));
  }
  if (!result.conclusion() && node.conclusion()) result = result.with_conclusion(node.conclusion());
  return replace_subproof(proof, position, result);
}

// ---------------------------------------------------------------------------
// Commuting conversions

namespace {

bool is_commuting_redex(const ProofTree& p) {
  if (!is_elimination(p.tag()) || p.children().empty()) return false;
  RuleTag major = p.children()[0].tag();
  return major == RuleTag::OrElim || major == RuleTag::ExistsElim;
}

void collect_commuting(const ProofTree& p, Position& pos, std::vector<Position>& out) {
  for (std::size_t i = 0; i < p.children().size(); ++i) {
    pos.push_back(i);
    collect_commuting(p.children()[i], pos, out);
    pos.pop_back();
  }
  if (is_commuting_redex(p)) out.push_back(pos);
}

}  // namespace

std::vector<Position> find_commuting_redexes(const ProofTree& proof) {
  std::vector<Position> out;
  Position pos;
  collect_commuting(proof, pos, out);
  return out;
}

ProofTree commute_conversion(const ProofTree& proof, const Position& position) {
  ProofTree outer = subproof(proof, position);
  if (!is_commuting_redex(outer)) throw Error("no commuting conversion at position " + to_string(position));
  ProofTree inner = outer.children()[0];

  // Material of the outer elimination that moves under the inner binders.
  std::set<std::string> moved_labels, moved_names;
  for (std::size_t i = 1; i < outer.children().size(); ++i) {
    auto fl = free_labels(outer.children()[i]);
    moved_labels.insert(fl.begin(), fl.end());
    auto nm = proof_names(outer.children()[i]);
    moved_names.insert(nm.begin(), nm.end());
  }
  if (outer.conclusion()) collect_names(*outer.conclusion(), moved_names);
  if (outer.witness()) collect_names(*outer.witness(), moved_names);
  if (outer.eigenvariable()) moved_names.insert(outer.eigenvariable()->name);

  std::set<std::string> taken_labels;
  all_labels(proof, taken_labels);
  std::set<std::string> taken_names = proof_names(proof);

  std::vector<std::string> labels = inner.labels();
  std::vector<ProofTree> kids = inner.children();
  std::optional<Var> eigen = inner.eigenvariable();
  for (std::size_t l = 0; l < labels.size(); ++l) {
    if (!moved_labels.contains(labels[l])) continue;
    std::string renamed = fresh_name(labels[l], taken_labels);
    taken_labels.insert(renamed);
    std::size_t c = static_cast<std::size_t>(bound_child(inner.tag(), l));
    kids[c] = rename_free_label(kids[c], labels[l], renamed);
    labels[l] = renamed;
  }
  if (eigen && moved_names.contains(eigen->name)) {
    Var renamed = fresh_var(*eigen, taken_names);
    Substitution s;
    s.bind(*eigen, Term::var(renamed));
    kids[1] = substitute_terms(kids[1], s);
    eigen = renamed;
  }
  for (std::size_t c = 1; c < kids.size(); ++c) {
    std::vector<ProofTree> elim_children = outer.children();
    elim_children[0] = kids[c];
    kids[c] = outer.with_children(std::move(elim_children));
  }
  ProofTree moved = ProofTree::make(inner.tag(), std::move(kids), std::move(labels), inner.witness(), eigen,
                                    outer.conclusion());
  return replace_subproof(proof, position, moved);
}

ProofNormalization normalize_proof(const Theory& theory, const ProofTree& proof, std::size_t fuel,
                                   NormalizeOptions options) {
  ProofTree cur = proof;
  std::size_t steps = 0;
  for (;;) {
    auto cuts = find_cuts(theory, cur, kDefaultFuel);
    std::optional<Position> next;
    bool is_cut = false;
    if (!cuts.empty()) {
      next = cuts.front().position;
      is_cut = true;
    } else if (options.commuting) {
      auto redexes = find_commuting_redexes(cur);
      if (!redexes.empty()) next = redexes.front();
    }
    if (!next) return {cur, steps};
    if (steps == fuel) return {std::nullopt, steps};
    cur = is_cut ? reduce_cut(theory, cur, *next) : commute_conversion(cur, *next);
    ++steps;
  }
}

bool ends_with_intro(const ProofTree& proof) { return is_introduction(proof.tag()); }

// ---------------------------------------------------------------------------
// Axioms to rules

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

}  // namespace

std::vector<IffConversion> iff_axioms_to_rules(const std::vector<Prop>& axioms, const std::string& prefix) {
  std::vector<IffConversion> out;
  std::size_t index = 0;
  for (const auto& axiom : axioms) {
    ++index;
    Prop body = axiom;
    while (body.kind() == Connective::Forall) body = body.body();
    bool iff_shape = body.kind() == Connective::And && body.left().kind() == Connective::Imp &&
                     body.right().kind() == Connective::Imp &&
                     alpha_eq(body.left().left(), body.right().right()) &&
                     alpha_eq(body.left().right(), body.right().left());
    if (!iff_shape) throw RuleError("axiom " + std::to_string(index) + " is not an equivalence: " + to_string(axiom));
    const Prop& lhs = body.left().left();
    const Prop& rhs = body.left().right();
    if (!lhs.is_atom())
      throw RuleError("axiom " + std::to_string(index) + ": left-hand side " + to_string(lhs) + " is not atomic");
    auto lhs_vars = free_vars(lhs);
    for (const auto& v : free_vars(rhs))
      if (!lhs_vars.contains(v))
        throw RuleError("axiom " + std::to_string(index) + ": variable " + v.name + " escapes the atom " +
                        to_string(lhs));
    std::set<std::string> preds;
    predicates_in(rhs, preds);
    out.push_back(IffConversion{RewriteRule::prop_rule(prefix + std::to_string(index), lhs, rhs),
                                preds.contains(lhs.pred())});
  }
  return out;
}

}  // namespace dedmod
