#include "doctest.h"
#include "dedmod/prover.hpp"
#include "dedmod/text.hpp"
#include "support.hpp"

using namespace dedmod;
using namespace dtest;

namespace {

Sequent goal(const Theory& th, const std::string& text) { return parse_goal(th.signature, text); }

void require_certified(const Theory& th, const Sequent& g, const SearchOutcome& r) {
  REQUIRE(r.proved());
  REQUIRE(r.proof);
  CheckResult c = check_proof(th, *r.proof, g);
  CHECK_MESSAGE(c.ok, c.message);
  CHECK(find_cuts(th, c.elaborated).empty());
  CHECK(r.stats.rejected == 0);
}

}  // namespace

TEST_SUITE("prover") {

TEST_CASE("identity on a long sum needs no rules") {
  const Theory& th = builtin("empty");
  Sequent g = goal(th, read_text(corpus("goals/assoc-identity.goal")));
  SearchOutcome r = search_proof(th, g, 8);
  require_certified(th, g, r);
}

TEST_CASE("the existential witness comes from associative unification") {
  const Theory& th = builtin("assoc");
  Sequent g = goal(th, read_text(corpus("goals/assoc-witness.goal")));
  SearchOutcome r = search_proof(th, g, 8);
  require_certified(th, g, r);
  REQUIRE(r.proof->tag() == RuleTag::ExistsIntro);
  REQUIRE(r.proof->witness());
  CHECK(to_string(*r.proof->witness()) == "(+ b c)");
  CHECK(r.stats.narrowing_calls >= 1);

  // Without the rule the same goal is out of reach.
  const Theory& empty = builtin("empty");
  CHECK_FALSE(search_proof(empty, goal(empty, read_text(corpus("goals/assoc-witness.goal"))), 8).proved());
}

TEST_CASE("no cut-free proof of Q under P ~> P => Q") {
  const Theory& th = builtin("crabbe");
  SearchOutcome r = search_proof(th, goal(th, "goal Q."), 10);
  CHECK(r.status == SearchStatus::Fail);
}

TEST_CASE("consistency probes") {
  CHECK(consistency_probe(builtin("empty"), 10).status == SearchStatus::Fail);
  CHECK(consistency_probe(builtin("pf-collapse"), 10).status == SearchStatus::Fail);

  const Theory& th = builtin("empty");
  Hypothesis ax{"ax", parse_prop(th.signature, "(forall x:i (iff (P x) (P (f x))))")};
  for (std::size_t d = 4; d <= 10; ++d)
    CHECK_MESSAGE(consistency_probe(th, d, {ax}).status == SearchStatus::BoundExceeded, "depth " << d);

  Hypothesis contradiction{"c", parse_prop(th.signature, "(and A (imp A bot))")};
  SearchOutcome bad = consistency_probe(th, 6, {contradiction});
  CHECK(bad.proved());
}

TEST_CASE("intuitionistic behaviour") {
  const Theory& th = builtin("empty");
  CHECK(search_proof(th, goal(th, "goal (imp A (imp (imp A bot) bot))."), 8).proved());
  CHECK_FALSE(search_proof(th, goal(th, "goal (or A (imp A bot))."), 8).proved());
  CHECK_FALSE(search_proof(th, goal(th, "goal (imp (imp (imp A bot) bot) A)."), 8).proved());
  Sequent q = goal(th, "goal (imp (exists x:i (forall y:i (P (+ x y)))) (forall y:i (exists x:i (P (+ x y))))).");
  require_certified(th, q, search_proof(th, q, 10));
  CHECK_FALSE(
      search_proof(th, goal(th, "goal (imp (forall y:i (exists x:i (P (+ x y)))) (exists x:i (forall y:i (P (+ x y)))))."), 8)
          .proved());
}

TEST_CASE("search modulo a proposition rule") {
  const Theory& sets = builtin("powerset");
  Sequent g = goal(sets, "goal (in a (pow a)).");
  require_certified(sets, g, search_proof(sets, g, 8));

  const Theory& p0 = builtin("p0-forall");
  Sequent h = goal(p0, "goal (imp (P 0) (P (S 0))).");
  require_certified(p0, h, search_proof(p0, h, 8));

  const Theory& add = builtin("addition");
  Sequent e = goal(add, "goal (exists x:nat (imp (P (+ x (S 0))) (P (S (S 0))))).");
  SearchOutcome r = search_proof(add, e, 8);
  require_certified(add, e, r);
  CHECK(to_string(*r.proof->witness()) == "(S 0)");
}

TEST_CASE("unvalidated theories and ill-formed goals are refused") {
  Theory raw = parse_theory("pred A.");
  CHECK_THROWS_AS(search_proof(raw, Sequent{{}, Prop::atom("A")}, 4), UnvalidatedTheory);
  const Theory& th = builtin("empty");
  CHECK_THROWS_AS(search_proof(th, Sequent{{}, Prop::atom("Nope")}, 4), Error);
}

TEST_CASE("node limit reports a bound") {
  const Theory& th = builtin("empty");
  SearchOptions opt;
  opt.node_limit = 5;
  Hypothesis ax{"ax", parse_prop(th.signature, "(forall x:i (iff (P x) (P (f x))))")};
  CHECK(consistency_probe(th, 10, {ax}, opt).status == SearchStatus::BoundExceeded);
}

}  // TEST_SUITE
