#include "dedmod/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dedmod/kernel.hpp"
#include "dedmod/prover.hpp"
#include "dedmod/text.hpp"
#include "dedmod/theories.hpp"

namespace dedmod {

namespace fs = std::filesystem;

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs = {"check",    "normalize", "congruent", "unify",       "prove",
                                                 "cuts",     "eliminate", "validate",  "subformulae", "probe"};
  return verbs;
}

namespace {

struct Failure {
  std::string message;
};

bool is_file(const std::string& s) {
  std::error_code ec;
  return fs::is_regular_file(s, ec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_input(const std::string& s) { return is_file(s) ? read_file(s) : s; }

Sequent read_goal(const Signature& sig, const std::string& s) {
  if (is_file(s)) return parse_goal(sig, read_file(s));
  return Sequent{{}, parse_prop(sig, s)};
}

void need_inputs(const Command& c, std::size_t n, const char* usage) {
  if (c.inputs.size() != n) throw Failure{c.verb + " expects " + usage};
}

struct Out {
  std::ostringstream text;
  int code = 2;

  CommandResult finish(int exit_code, const std::string& verdict) {
    code = exit_code;
    text << "#verdict: " << verdict << '\n';
    return CommandResult{code, text.str()};
  }
};

std::string stats_line(const SearchStats& s) {
  return "nodes expanded: " + std::to_string(s.nodes_expanded) +
         ", narrowing calls: " + std::to_string(s.narrowing_calls);
}

const char* error_name(CheckErrorKind k) {
  switch (k) {
    case CheckErrorKind::None: return "none";
    case CheckErrorKind::RuleMismatch: return "rule-mismatch";
    case CheckErrorKind::UnknownHypothesis: return "unknown-hypothesis";
    case CheckErrorKind::CongruenceFailure: return "congruence-failure";
    case CheckErrorKind::EigenvariableViolation: return "eigenvariable-violation";
    case CheckErrorKind::MissingConclusion: return "missing-conclusion";
    case CheckErrorKind::IllFormed: return "ill-formed";
    case CheckErrorKind::FuelExhausted: return "fuel-exhausted";
  }
  return "error";
}

// Checks a proof file against a goal; prints the failure when it does not check.
std::optional<ProofTree> checked(const Theory& th, const Command& c, const Sequent& goal, Out& out,
                                 CheckResult& result) {
  ProofTree proof = parse_proof(th.signature, read_input(c.inputs[0]));
  result = check_proof(th, proof, goal, c.fuel);
  if (!result.ok) {
    out.text << "proof rejected at node " << to_string(result.failing_node) << ": " << result.message << '\n';
    return std::nullopt;
  }
  return result.elaborated;
}

CommandResult run(const Command& c) {
  Out out;
  Theory th = resolve_theory(c.theory, c.fuel);
  const Signature& sig = th.signature;

  if (c.verb == "validate") {
    need_inputs(c, 0, "no inputs");
    out.text << "theory: " << th.name << '\n' << "rules: " << th.rules.rules().size() << '\n' << th.report.to_string();
    const auto& r = th.report;
    bool ok = r.non_confusing && r.locally_confluent && r.termination != TerminationEvidence::Unknown;
    return out.finish(ok ? 0 : 1, ok ? "convergent" : "not-convergent");
  }

  if (c.verb == "normalize") {
    need_inputs(c, 1, "one term or formula");
    Expr x = parse_expr(sig, read_input(c.inputs[0]));
    auto n = normalize(th.rules, x, c.fuel);
    if (n.exhausted()) {
      out.text << "no normal form within " << c.fuel << " steps\n";
      return out.finish(2, "fuel-exhausted");
    }
    out.text << to_string(*n.value) << '\n' << "steps: " << n.steps << '\n';
    return out.finish(0, "normal-form " + to_string(*n.value));
  }

  if (c.verb == "congruent") {
    need_inputs(c, 2, "two terms or formulas");
    Expr a = parse_expr(sig, read_input(c.inputs[0]));
    Expr b = parse_expr(sig, read_input(c.inputs[1]));
    if (a.index() != b.index()) throw Failure{"cannot compare a term with a formula"};
    Congruence r = congruent(th.rules, a, b, c.fuel);
    out.text << "normal forms: " << r.lhs_normal << " | " << r.rhs_normal << '\n';
    if (!r.trusted) out.text << "note: system not known to be convergent; heuristic answer\n";
    switch (r.verdict) {
      case CongruenceVerdict::Congruent: return out.finish(0, "congruent");
      case CongruenceVerdict::NotCongruent: return out.finish(1, "not-congruent");
      case CongruenceVerdict::FuelExhausted: return out.finish(2, "fuel-exhausted");
    }
  }

  if (c.verb == "unify") {
    need_inputs(c, 2, "two terms or atoms");
    Expr a = parse_expr(sig, read_input(c.inputs[0]));
    Expr b = parse_expr(sig, read_input(c.inputs[1]));
    if (a.index() != b.index()) throw Failure{"cannot unify a term with a formula"};
    auto mgu = unify_syntactic(a, b);
    out.text << "syntactic: " << (mgu ? to_string(*mgu) : std::string("no unifier")) << '\n';
    UnificationProblem problem{{{a, b}}, &th.rules, {}};
    SolutionStream stream = narrow_unify(problem, c.depth, c.cap, c.fuel);
    out.text << "modulo: " << stream.solutions.size() << " solution(s)\n";
    for (const auto& s : stream.solutions) out.text << "  " << to_string(s) << '\n';
    const char* status = stream.status == StreamStatus::SearchSpaceExhausted ? "search-space-exhausted"
                         : stream.status == StreamStatus::CompleteAtBound  ? "complete-at-bound"
                                                                           : "cap-reached";
    out.text << "stream: " << status << ", states explored: " << stream.states_explored << '\n';
    if (!stream.solutions.empty()) return out.finish(0, "unifiable " + to_string(stream.solutions.front()));
    if (stream.bound_exceeded()) return out.finish(2, "bound-exceeded");
    return out.finish(1, "not-unifiable");
  }

  if (c.verb == "prove") {
    need_inputs(c, 1, "a goal file or formula");
    Sequent goal = read_goal(sig, c.inputs[0]);
    SearchOptions opt;
    opt.fuel = c.fuel;
    opt.solution_cap = c.cap;
    SearchOutcome r = search_proof(th, goal, c.depth, opt);
    out.text << "goal: " << to_string(goal) << '\n';
    if (r.proof) out.text << print_proof_pretty(*r.proof) << '\n';
    out.text << stats_line(r.stats) << '\n';
    if (!r.note.empty()) out.text << "note: " << r.note << '\n';
    switch (r.status) {
      case SearchStatus::Proved: return out.finish(0, "proved");
      case SearchStatus::Fail: return out.finish(1, "fail at depth " + std::to_string(c.depth));
      case SearchStatus::BoundExceeded: return out.finish(2, "bound-exceeded at depth " + std::to_string(c.depth));
    }
  }

  if (c.verb == "probe") {
    need_inputs(c, 0, "no inputs (use --hyp for hypotheses)");
    std::vector<Hypothesis> hyps;
    for (std::size_t i = 0; i < c.hypotheses.size(); ++i)
      hyps.push_back(Hypothesis{"ax" + std::to_string(i + 1), parse_prop(sig, read_input(c.hypotheses[i]))});
    SearchOptions opt;
    opt.fuel = c.fuel;
    opt.solution_cap = c.cap;
    SearchOutcome r = consistency_probe(th, c.depth, hyps, opt);
    out.text << stats_line(r.stats) << '\n';
    if (!r.note.empty()) out.text << "note: " << r.note << '\n';
    switch (r.status) {
      case SearchStatus::Fail: return out.finish(0, "consistent-at-depth " + std::to_string(c.depth));
      case SearchStatus::Proved:
        out.text << print_proof_pretty(*r.proof) << '\n';
        return out.finish(1, "inconsistent");
      case SearchStatus::BoundExceeded: return out.finish(2, "bound-exceeded at depth " + std::to_string(c.depth));
    }
  }

  if (c.verb == "check" || c.verb == "cuts" || c.verb == "eliminate") {
    need_inputs(c, 2, "a proof and a goal (file or formula)");
    Sequent goal = read_goal(sig, c.inputs[1]);
    CheckResult result;
    auto proof = checked(th, c, goal, out, result);
    if (!proof) {
      if (result.error == CheckErrorKind::FuelExhausted) return out.finish(2, "fuel-exhausted");
      return out.finish(c.verb == "check" ? 1 : 2, std::string("rejected ") + error_name(result.error));
    }
    if (c.verb == "check") {
      out.text << print_proof_pretty(*proof) << '\n';
      return out.finish(0, "ok");
    }
    if (c.verb == "cuts") {
      auto cuts = find_cuts(th, *proof, c.fuel);
      for (const auto& cut : cuts)
        out.text << "cut at " << to_string(cut.position) << ": " << tag_name(cut.intro) << " / " << tag_name(cut.elim)
                 << '\n';
      if (cuts.empty()) return out.finish(0, "cut-free");
      return out.finish(1, "cuts-found " + std::to_string(cuts.size()));
    }
    NormalizeOptions options;
    options.commuting = c.commuting;
    auto n = normalize_proof(th, *proof, c.fuel, options);
    if (n.exhausted()) {
      out.text << "no cut-free form within " << c.fuel << " reductions\n";
      return out.finish(2, "fuel-exhausted");
    }
    CheckResult again = check_proof(th, *n.proof, goal, c.fuel);
    if (!again.ok) throw Failure{"reduced proof no longer checks: " + again.message};
    out.text << print_proof_pretty(again.elaborated) << '\n' << "reductions: " << n.steps << '\n';
    return out.finish(0, "cut-free");
  }

  if (c.verb == "subformulae") {
    need_inputs(c, 1, "one formula");
    Prop a = parse_prop(sig, read_input(c.inputs[0]));
    SubformulaSet set = subformula_closure(th, a, c.fuel);
    for (const auto& cls : set.classes) {
      out.text << "[" << to_string(cls.representative) << "]";
      for (std::size_t i = 1; i < cls.members.size(); ++i) out.text << " = " << to_string(cls.members[i]);
      out.text << '\n';
    }
    out.text << "classes: " << set.size() << '\n';
    int code = set.status == ClosureStatus::TruncatedAtFuel ? 2 : 0;
    return out.finish(code, to_string(set.status));
  }

  throw Failure{"unknown verb '" + c.verb + "'"};
}

}  // namespace

Theory resolve_theory(const std::string& designation, std::size_t fuel) {
  if (is_file(designation)) {
    Theory th = parse_theory(read_file(designation), fs::path(designation).stem().string());
    validate_theory(th, fuel);
    return th;
  }
  for (const auto& n : builtin_names())
    if (n == designation) return load_builtin(n);
  throw Error("no builtin theory or file named '" + designation + "'");
}

CommandResult run_command(const Command& command) {
  try {
    return run(command);
  } catch (const Failure& f) {
    return CommandResult{2, "error: " + f.message + "\n#verdict: error\n"};
  } catch (const std::exception& e) {
    return CommandResult{2, std::string("error: ") + e.what() + "\n#verdict: error\n"};
  }
}

}  // namespace dedmod
