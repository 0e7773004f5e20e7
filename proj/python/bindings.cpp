// Python module _dedmod: theories as handles, the main operations as
// functions returning plain Python values.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dedmod/cli.hpp"
#include "dedmod/kernel.hpp"
#include "dedmod/prover.hpp"
#include "dedmod/rewrite.hpp"
#include "dedmod/text.hpp"
#include "dedmod/theories.hpp"
#include "dedmod/unify.hpp"

namespace py = pybind11;
using namespace dedmod;

namespace {

// A goal is either sequent text starting with `goal` or a bare formula.
Sequent read_goal(const Signature& sig, const std::string& text) {
  auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text.compare(start, 4, "goal") == 0) return parse_goal(sig, text);
  return Sequent{{}, parse_prop(sig, text)};
}

py::dict substitution_dict(const Substitution& s) {
  py::dict d;
  for (const auto& [v, t] : s.bindings()) d[py::str(v.name)] = to_string(t);
  return d;
}

const char* stream_status(StreamStatus s) {
  switch (s) {
    case StreamStatus::SearchSpaceExhausted: return "exhausted";
    case StreamStatus::CompleteAtBound: return "complete-at-bound";
    case StreamStatus::CapReached: return "cap-reached";
  }
  return "";
}

py::dict search_dict(const SearchOutcome& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["proof"] = r.proof ? py::object(py::str(print_proof(*r.proof))) : py::object(py::none());
  d["nodes"] = r.stats.nodes_expanded;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dedmod, m) {
  m.doc() = "Deduction modulo: rewriting, unification, proof checking and proof search";

  py::register_exception<Error>(m, "DedmodError");

  py::class_<Theory>(m, "Theory")
      .def(py::init([](const std::string& designation) { return resolve_theory(designation); }),
           py::arg("designation") = "empty", "Builtin name or theory file path; validated on load.")
      .def_static(
          "from_text",
          [](const std::string& text, const std::string& name) {
            Theory t = parse_theory(text, name);
            validate_theory(t);
            return t;
          },
          py::arg("text"), py::arg("name") = "")
      .def_readonly("name", &Theory::name)
      .def_property_readonly("report", [](const Theory& t) { return t.report.to_string(); })
      .def_property_readonly("source", [](const Theory& t) { return print_theory(t); })
      .def_property_readonly("rules",
                             [](const Theory& t) {
                               std::vector<std::string> out;
                               for (const auto& r : t.rules.rules()) out.push_back(to_string(r));
                               return out;
                             })
      .def("__repr__", [](const Theory& t) { return "<Theory " + t.name + ">"; });

  m.def("builtin_names", &builtin_names);

  m.def(
      "normalize",
      [](const Theory& th, const std::string& text, std::size_t fuel) -> py::object {
        auto n = normalize(th.rules, parse_expr(th.signature, text), fuel);
        if (n.exhausted()) return py::none();
        return py::str(to_string(*n.value));
      },
      py::arg("theory"), py::arg("text"), py::arg("fuel") = kDefaultFuel,
      "Normal form as text, or None when fuel runs out.");

  m.def(
      "congruent",
      [](const Theory& th, const std::string& a, const std::string& b, std::size_t fuel) -> py::object {
        Congruence c = congruent(th.rules, parse_expr(th.signature, a), parse_expr(th.signature, b), fuel);
        if (c.verdict == CongruenceVerdict::FuelExhausted) return py::none();
        return py::bool_(c.congruent());
      },
      py::arg("theory"), py::arg("a"), py::arg("b"), py::arg("fuel") = kDefaultFuel,
      "True or False, or None when fuel runs out.");

  m.def(
      "unify",
      [](const Theory& th, const std::string& a, const std::string& b, std::size_t depth, std::size_t cap) {
        Expr x = parse_expr(th.signature, a), y = parse_expr(th.signature, b);
        py::dict d;
        auto mgu = unify_syntactic(x, y);
        d["syntactic"] = mgu ? py::object(substitution_dict(*mgu)) : py::object(py::none());
        SolutionStream st = narrow_unify(UnificationProblem{{{x, y}}, &th.rules, {}}, depth, cap);
        py::list sols;
        for (const auto& s : st.solutions) sols.append(substitution_dict(s));
        d["solutions"] = sols;
        d["status"] = stream_status(st.status);
        d["states"] = st.states_explored;
        return d;
      },
      py::arg("theory"), py::arg("a"), py::arg("b"), py::arg("depth") = kDefaultNarrowingDepth,
      py::arg("cap") = kDefaultSolutionCap);

  m.def(
      "prove",
      [](const Theory& th, const std::string& goal, std::size_t depth) {
        return search_dict(search_proof(th, read_goal(th.signature, goal), depth));
      },
      py::arg("theory"), py::arg("goal"), py::arg("depth") = 8);

  m.def(
      "probe",
      [](const Theory& th, std::size_t depth, const std::vector<std::string>& hypotheses) {
        std::vector<Hypothesis> hs;
        for (std::size_t i = 0; i < hypotheses.size(); ++i)
          hs.push_back(Hypothesis{"ax" + std::to_string(i + 1), parse_prop(th.signature, hypotheses[i])});
        return search_dict(consistency_probe(th, depth, hs));
      },
      py::arg("theory"), py::arg("depth") = 8, py::arg("hypotheses") = std::vector<std::string>{});

  m.def(
      "check",
      [](const Theory& th, const std::string& proof, const std::string& goal, std::size_t fuel) {
        CheckResult r = check_proof(th, parse_proof(th.signature, proof), read_goal(th.signature, goal), fuel);
        py::dict d;
        d["ok"] = r.ok;
        d["message"] = r.message;
        d["cuts"] = r.ok ? find_cuts(th, r.elaborated, fuel).size() : 0;
        return d;
      },
      py::arg("theory"), py::arg("proof"), py::arg("goal"), py::arg("fuel") = kDefaultFuel);

  m.def(
      "eliminate",
      [](const Theory& th, const std::string& proof, const std::string& goal, std::size_t fuel) -> py::object {
        CheckResult r = check_proof(th, parse_proof(th.signature, proof), read_goal(th.signature, goal));
        if (!r.ok) throw Error("proof does not check: " + r.message);
        ProofNormalization n = normalize_proof(th, r.elaborated, fuel);
        if (n.exhausted()) return py::none();
        return py::str(print_proof(*n.proof));
      },
      py::arg("theory"), py::arg("proof"), py::arg("goal"), py::arg("fuel") = kDefaultFuel,
      "Cut-free proof text, or None when fuel runs out.");

  m.def(
      "run",
      [](const std::string& verb, const std::string& theory, const std::vector<std::string>& inputs,
         std::size_t depth, std::size_t fuel, std::size_t cap, const std::vector<std::string>& hypotheses) {
        Command c;
        c.verb = verb;
        c.theory = theory;
        c.inputs = inputs;
        c.depth = depth;
        c.fuel = fuel;
        c.cap = cap;
        c.hypotheses = hypotheses;
        CommandResult r = run_command(c);
        return py::make_tuple(r.exit_code, r.report);
      },
      py::arg("verb"), py::arg("theory") = "empty", py::arg("inputs") = std::vector<std::string>{},
      py::arg("depth") = 8, py::arg("fuel") = kDefaultFuel, py::arg("cap") = kDefaultSolutionCap,
      py::arg("hypotheses") = std::vector<std::string>{},
      "Runs one command line verb; returns (exit_code, report).");
}
