// dedmod: command-line driver. Every run ends with a `#verdict:` line.

#include <iostream>

#include "CLI11.hpp"
#include "dedmod/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Deduction modulo workbench"};
  app.require_subcommand(1);

  dedmod::Command cmd;
  struct VerbHelp {
    const char* verb;
    const char* help;
    const char* inputs;
  };
  const VerbHelp verbs[] = {
      {"check", "check a proof against a goal", "PROOF GOAL"},
      {"normalize", "normal form of a term or formula", "EXPR"},
      {"congruent", "decide whether two terms or formulas are congruent", "EXPR EXPR"},
      {"unify", "syntactic and narrowing unification", "EXPR EXPR"},
      {"prove", "bounded cut-free proof search", "GOAL"},
      {"cuts", "list the cuts of a checked proof", "PROOF GOAL"},
      {"eliminate", "reduce cuts until none remain", "PROOF GOAL"},
      {"validate", "run the theory checks", ""},
      {"subformulae", "congruence-closed sub-formula set", "FORMULA"},
      {"probe", "search for a proof of bot", ""},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.verb, v.help);
    sub->add_option("-t,--theory", cmd.theory, "builtin name or theory file")->capture_default_str();
    sub->add_option("-d,--depth", cmd.depth, "search / narrowing depth bound")->capture_default_str();
    sub->add_option("-f,--fuel", cmd.fuel, "rewrite or reduction step budget")->capture_default_str();
    sub->add_option("-c,--cap", cmd.cap, "solution cap for narrowing")->capture_default_str();
    if (std::string(v.verb) == "eliminate") sub->add_flag("--commuting", cmd.commuting, "also apply commuting conversions");
    if (std::string(v.verb) == "probe") sub->add_option("--hyp", cmd.hypotheses, "extra hypothesis (repeatable)");
    if (*v.inputs) sub->add_option("inputs", cmd.inputs, std::string("files or literal text: ") + v.inputs);
    sub->callback([&cmd, &v] { cmd.verb = v.verb; });
  }

  CLI11_PARSE(app, argc, argv);
  dedmod::CommandResult r = dedmod::run_command(cmd);
  std::cout << r.report;
  return r.exit_code;
}
