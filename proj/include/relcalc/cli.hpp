#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relcalc/verify.hpp"

namespace relcalc {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_usage = 2 };

/// Report document shared by every command.
struct Report {
  std::string command;
  TolerancePolicy tolerance;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  Json result = Json::object();

  void add(std::string name, std::string anchor, bool ok, Json witness = nullptr);
  /// exit_check_failed iff some check failed; a pure function of the checks.
  int exit_code() const;
  Json to_json() const;
};

/// Runs one invocation (`args` excludes the program name). The report goes to
/// `out` as JSON, a one-line-per-check summary to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relcalc
