// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "dedmod/kernel.hpp"
#include "dedmod/prover.hpp"
#include "dedmod/rewrite.hpp"
#include "dedmod/text.hpp"
#include "dedmod/theories.hpp"
#include "dedmod/unify.hpp"
#include "harness.hpp"
#include "support.hpp"

using namespace dedmod;
using namespace dtest;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
  void tally(const Tally& t, const std::string& what) {
    detail << what << " " << t.summary() << "; ";
    for (const auto& f : t.failures) detail << "[failed: " << f << "] ";
    if (!t.ok()) ok = false;
  }
};

constexpr double kTimeLimitSeconds = 10.0;

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body, double limit = kTimeLimitSeconds) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << "[exception: " << e.what() << "] ";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit) {
    out.ok = false;
    out.detail << "[over time limit] ";
  }
  if (!out.ok) ++failures;
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(2);
  t << secs;
  std::cout << (out.ok ? "PASS" : "FAIL") << "  " << n << ". " << title << " (" << t.str() << " s)  "
            << out.detail.str() << std::endl;
}

}  // namespace

int main() {
  criterion(1, "normalization golden test", [](Outcome& o) {
    const Theory& th = builtin("assoc");
    auto n = normalize(th.rules, Expr{parse_prop(th.signature, "(P (+ (+ a b) (+ (+ c d) e)))")});
    o.require(!n.exhausted(), "normal form reached");
    std::string got = n.exhausted() ? "" : to_string(*n.value);
    o.detail << got << " ";
    o.require(got == "(P (+ (+ (+ (+ a b) c) d) e))", "expected (P (+ (+ (+ (+ a b) c) d) e))");
  });

  criterion(2, "associative unification golden test", [](Outcome& o) {
    const Theory& th = builtin("assoc");
    Prop a = parse_prop(th.signature, "(P (+ a x))");
    Prop b = parse_prop(th.signature, "(P (+ (+ a b) c))");
    o.require(!unify_syntactic(a, b), "syntactic unification fails");
    SolutionStream st = narrow_unify(UnificationProblem{{{Expr{a}, Expr{b}}}, &th.rules, {}}, 8, 16);
    o.require(!st.solutions.empty(), "a solution within depth 8");
    if (!st.solutions.empty()) {
      o.detail << "first solution " << to_string(st.solutions.front()) << ", states " << st.states_explored << " ";
      o.require(to_string(st.solutions.front()) == "{x := (+ b c)}", "first solution is {x := (+ b c)}");
    }
  });

  criterion(3, "self-applied proof of Q: checks, has a cut, does not normalize, no cut-free proof", [](Outcome& o) {
    const Theory& th = builtin("crabbe");
    ProofTree p = parse_proof(th.signature, read_text(corpus("proofs/crabbe-q.prf")));
    Sequent g = parse_goal(th.signature, read_text(corpus("goals/crabbe-q.goal")));
    CheckResult c = check_proof(th, p, g);
    o.require(c.ok, "kernel accepts the proof: " + c.message);
    if (!c.ok) return;
    auto cuts = find_cuts(th, c.elaborated);
    o.detail << "cuts " << cuts.size() << "; ";
    o.require(!cuts.empty(), "at least one cut");
    o.require(normalize_proof(th, c.elaborated, 1000).exhausted(), "normalization exhausts fuel 1000");
    SearchOutcome s = search_proof(th, g, 10);
    o.detail << "search at depth 10: " << dedmod::to_string(s.status) << " ";
    o.require(s.status == SearchStatus::Fail, "search fails at depth 10");
  });

  criterion(4, "consistency probes", [](Outcome& o) {
    for (const char* name : {"empty", "pf-collapse"}) {
      SearchOutcome r = consistency_probe(builtin(name), 10);
      o.detail << name << ": " << dedmod::to_string(r.status) << "; ";
      o.require(r.status == SearchStatus::Fail, std::string(name) + " fails finitely at depth 10");
    }
    const Theory& th = builtin("empty");
    Hypothesis ax{"ax", parse_prop(th.signature, "(forall x:i (iff (P x) (P (f x))))")};
    for (std::size_t d = 4; d <= 10; ++d) {
      SearchOutcome r = consistency_probe(th, d, {ax});
      o.require(r.status == SearchStatus::BoundExceeded, "axiom as hypothesis exceeds the bound at depth " +
                                                             std::to_string(d));
    }
    o.detail << "axiom as hypothesis: bound exceeded at depths 4-10 ";
  });

  criterion(5, "fold/unfold equivalence oracle", [](Outcome& o) {
    Tally t = fold_unfold_corpus_suite(8);
    o.require(definitional_goals().size() >= 20, "at least 20 goals");
    o.tally(t, "agreement");
  });

  criterion(6, "addition as an algorithm", [](Outcome& o) { o.tally(addition_suite(5), "m, n <= 5"); });

  criterion(7, "disjunction property harness", [](Outcome& o) { o.tally(disjunction_suite(8), "proved disjunctions"); });

  criterion(8, "sub-formula closure golden test", [](Outcome& o) {
    Theory th = parse_theory("pred P. pred Q. rule r: P ~> (imp Q Q).", "p-qq");
    validate_theory(th);
    SubformulaSet s = subformula_closure(th, Prop::atom("P"));
    for (const auto& c : s.classes) o.detail << "[" << to_string(c.representative) << "] ";
    o.require(s.status == ClosureStatus::Closed, "closed");
    o.require(s.size() == 2 && to_string(s.classes[0].representative) == "P" &&
                  to_string(s.classes[1].representative) == "Q",
              "classes {[P], [Q]}");
  });

  criterion(9, "property suites", [](Outcome& o) {
    o.tally(substitution_suite(1000, 11), "substitution");
    o.tally(strategy_suite(500, 13), "strategy independence");
    o.tally(narrowing_soundness_suite(60, 15), "narrowing soundness");
    o.tally(subject_preservation_suite(200, 18), "subject preservation");
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
