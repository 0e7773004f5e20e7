#include "doctest.h"
#include "dedmod/rewrite.hpp"
#include "dedmod/text.hpp"
#include "dedmod/theories.hpp"
#include "support.hpp"

using namespace dedmod;
using namespace dtest;

namespace {

Expr expr(const Theory& th, const std::string& s) { return parse_expr(th.signature, s); }

}  // namespace

TEST_SUITE("rewrite") {

TEST_CASE("matching") {
  const Theory& th = builtin("assoc");
  const Signature& sig = th.signature;
  Term pat = parse_term(sig, "(+ x (+ y z))");
  auto m = match_pattern(pat, parse_term(sig, "(+ c (+ d e))"));
  REQUIRE(m);
  CHECK(to_string(*m->lookup(Var{"x", "i"})) == "c");
  CHECK(to_string(*m->lookup(Var{"y", "i"})) == "d");
  CHECK(to_string(*m->lookup(Var{"z", "i"})) == "e");
  CHECK_FALSE(match_pattern(pat, parse_term(sig, "(+ (+ c d) e)")));

  const Signature& nat = builtin("addition").signature;
  CHECK_FALSE(match_pattern(parse_term(nat, "(+ 0 y)"), parse_term(nat, "(+ (S 0) 0)")));
  auto empty = match_pattern(parse_prop(nat, "(P 0)"), parse_prop(nat, "(P 0)"));
  REQUIRE(empty);
  CHECK(empty->empty());
}

TEST_CASE("a non-linear pattern needs equal subterms") {
  Theory th = parse_theory("sort i. func a : i. func b : i. func g : i i -> i.");
  Term pat = parse_term(th.signature, "(g x x)");
  CHECK(match_pattern(pat, parse_term(th.signature, "(g a a)")));
  CHECK_FALSE(match_pattern(pat, parse_term(th.signature, "(g a b)")));
}

TEST_CASE("redex positions") {
  const Theory& assoc = builtin("assoc");
  auto rs = rewrite_positions(assoc.rules, expr(assoc, "(+ (+ a b) (+ (+ c d) e))"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].position == Position{});
  CHECK(rs[0].rule == "assoc");

  // Inside an atom under a quantifier.
  auto deep = rewrite_positions(assoc.rules, expr(assoc, "(forall y:i (P (+ a (+ b y))))"));
  REQUIRE(deep.size() == 1);
  CHECK(deep[0].position == Position{0, 0});

  const Theory& p0 = builtin("p0-forall");
  auto atom = rewrite_positions(p0.rules, expr(p0, "(P 0)"));
  REQUIRE(atom.size() == 1);
  CHECK(atom[0].position == Position{});
  CHECK(to_string(atom[0].reduct) == "(forall x:nat (P x))");

  const Theory& add = builtin("addition");
  CHECK(rewrite_positions(add.rules, expr(add, "y:nat")).empty());
}

TEST_CASE("normalization golden examples") {
  const Theory& assoc = builtin("assoc");
  auto n = normalize(assoc.rules, expr(assoc, "(P (+ (+ a b) (+ (+ c d) e)))"));
  REQUIRE_FALSE(n.exhausted());
  CHECK(to_string(*n.value) == "(P (+ (+ (+ (+ a b) c) d) e))");
  CHECK(n.steps == 2);

  const Theory& add = builtin("addition");
  auto m = normalize(add.rules, expr(add, "(+ (S (S 0)) (S 0))"));
  REQUIRE_FALSE(m.exhausted());
  CHECK(to_string(*m.value) == "(S (S (S 0)))");
}

TEST_CASE("a permutation rule exhausts fuel") {
  const Theory& comm = builtin("comm");
  auto n = normalize(comm.rules, expr(comm, "(+ a b)"), 100);
  CHECK(n.exhausted());
  CHECK(congruent(comm.rules, expr(comm, "(+ a b)"), expr(comm, "(+ b a)"), 100).congruent());
  CHECK_FALSE(congruent(comm.rules, expr(comm, "(+ a b)"), expr(comm, "a"), 100).trusted);
}

TEST_CASE("local confluence") {
  Theory assoc = builtin("assoc");
  auto cps = critical_pairs(assoc.rules);
  REQUIRE(cps.size() == 1);
  for (const auto& cp : cps) {
    // Both reducts are one step from the peak.
    bool outer = false, inner = false;
    for (const auto& r : rewrite_positions(assoc.rules, cp.peak)) {
      if (alpha_eq(r.reduct, cp.outer_reduct)) outer = true;
      if (alpha_eq(r.reduct, cp.inner_reduct)) inner = true;
    }
    CHECK(outer);
    CHECK(inner);
  }
  CHECK(check_local_confluence(assoc.rules).locally_confluent());

  Theory add = builtin("addition");
  auto rep = check_local_confluence(add.rules);
  CHECK(rep.locally_confluent());
  CHECK(rep.joinable.empty());

  Theory split = parse_theory("pred A. pred B. pred P. rule one: P ~> A. rule two: P ~> B.");
  auto bad = check_local_confluence(split.rules);
  CHECK_FALSE(bad.locally_confluent());
  REQUIRE(bad.failures.size() >= 1);
  CHECK(to_string(bad.failures[0].peak) == "P");
  CHECK_FALSE(split.rules.flags().locally_confluent);
}

TEST_CASE("termination by lexicographic path order") {
  Theory assoc = builtin("assoc");
  CHECK(check_termination_lpo(assoc.rules, {"+"}).terminating);
  CHECK(assoc.rules.flags().termination == TerminationEvidence::Lpo);

  Theory zero = parse_theory("sort nat. func 0 : nat. func + : nat nat -> nat. rule zero: (+ 0 y) ~> y.");
  CHECK(check_termination_lpo(zero.rules, {"+", "0"}).terminating);

  Theory comm = parse_theory("sort i. func + : i i -> i. rule comm: (+ x y) ~> (+ y x).");
  auto r = check_termination_lpo(comm.rules, {"+"});
  CHECK_FALSE(r.terminating);
  CHECK(r.unoriented == std::vector<std::string>{"comm"});
  CHECK(comm.rules.flags().termination == TerminationEvidence::Unknown);

  const Signature& sig = builtin("addition").signature;
  std::vector<std::string> prec = {"+", "S", "0"};
  CHECK(lpo_greater(Expr{parse_term(sig, "(+ (S x) y)")}, Expr{parse_term(sig, "(S (+ x y))")}, prec));
  CHECK_FALSE(lpo_greater(Expr{parse_term(sig, "(S (+ x y))")}, Expr{parse_term(sig, "(+ (S x) y)")}, prec));
}

TEST_CASE("non-confusion") {
  Theory p0 = builtin("p0-forall");
  CHECK(check_nonconfusing(p0.rules));
  Theory crabbe = builtin("crabbe");
  CHECK(check_nonconfusing(crabbe.rules));
}

TEST_CASE("rules are checked at construction") {
  const Signature& sig = builtin("addition").signature;
  Term x = Term::var("x", "nat");
  CHECK_THROWS_AS(RewriteRule::term_rule("v", x, parse_term(sig, "(S x)")), RuleError);
  CHECK_THROWS_AS(RewriteRule::term_rule("escape", parse_term(sig, "(S x)"), parse_term(sig, "(+ x y)")),
                  RuleError);
  CHECK_THROWS_AS(RewriteRule::prop_rule("conj", Prop::conj(parse_prop(sig, "(P 0)"), parse_prop(sig, "(P 0)")),
                                         Prop::top()),
                  RuleError);
  RewriteSystem R;
  R.add(RewriteRule::term_rule("r", parse_term(sig, "(S x)"), x));
  CHECK_THROWS_AS(R.add(RewriteRule::term_rule("r", parse_term(sig, "(S x)"), x)), RuleError);
}

TEST_CASE("session memo agrees with one-shot congruence") {
  const Theory& assoc = builtin("assoc");
  CongruenceSession session(assoc.rules, kDefaultFuel);
  Prop a = parse_prop(assoc.signature, "(P (+ a (+ b c)))");
  Prop b = parse_prop(assoc.signature, "(P (+ (+ a b) c))");
  CHECK(session.congruent(a, b));
  CHECK(session.congruent(a, b));
  CHECK(congruent(assoc.rules, Expr{a}, Expr{b}).congruent());
  CHECK(congruent(assoc.rules, Expr{a}, Expr{b}).trusted);
}

}  // TEST_SUITE
