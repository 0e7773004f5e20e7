// Command driver shared by the executable, the tests and the Python module.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dedmod/rewrite.hpp"
#include "dedmod/theory.hpp"
#include "dedmod/unify.hpp"

namespace dedmod {

struct Command {
  /// check | normalize | congruent | unify | prove | cuts | eliminate |
  /// validate | subformulae | probe
  std::string verb;
  /// Builtin name or path of a theory file.
  std::string theory = "empty";
  /// Files, or literal formula text when no such file exists.
  std::vector<std::string> inputs;
  /// Extra hypotheses for `probe`, as formula text.
  std::vector<std::string> hypotheses;
  std::size_t depth = 8;
  std::size_t fuel = kDefaultFuel;
  std::size_t cap = kDefaultSolutionCap;
  bool commuting = false;
};

struct CommandResult {
  /// 0 positive verdict, 1 negative verdict, 2 error or bound exceeded.
  int exit_code = 2;
  /// Ends with one `#verdict: ...` line.
  std::string report;
};

const std::vector<std::string>& command_verbs();

/// Never throws: errors become exit code 2 with an `error` verdict.
CommandResult run_command(const Command& command);

/// Builtin name or theory file path; the result is validated.
Theory resolve_theory(const std::string& designation, std::size_t fuel = kDefaultFuel);

}  // namespace dedmod
