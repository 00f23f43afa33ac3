#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qtime_runner/result_table.hpp"
#include "qtime_runner/writers.hpp"

namespace qtime::runner {

enum ExitCode : int { kSuccess = 0, kChecksFailed = 1, kParseError = 2, kPreconditionError = 3, kGuardError = 4 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<Format> format;
  std::optional<long long> seed;
};

struct ScenarioOutcome {
  std::filesystem::path file;
  std::string name;  // scenario name, or the file name when parsing failed
  int exit_code = kSuccess;
  std::string diagnostic;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> outputs;
};

/// Parses, runs and writes one scenario. Errors are mapped onto exit codes
/// and reported in `diagnostic`; nothing is written unless the experiment
/// completes.
ScenarioOutcome run_scenario_file(const std::filesystem::path& file, const RunOptions& options);

struct SuiteOutcome {
  std::string name;
  int exit_code = kSuccess;
  std::vector<ScenarioOutcome> scenarios;
  std::vector<std::filesystem::path> outputs;
};

/// Runs every scenario of a suite concurrently and writes
/// `<suite name>_summary` with one row per check. Throws ParseError for a
/// malformed suite file.
SuiteOutcome run_suite_file(const std::filesystem::path& file, const RunOptions& options);

/// One row per check (or per error) across all scenarios.
ResultTable summary_table(const std::string& name, const std::vector<ScenarioOutcome>& outcomes);

/// Human-readable report lines for the CLI.
void print_outcome(const ScenarioOutcome& outcome, std::ostream& os);

}  // namespace qtime::runner
