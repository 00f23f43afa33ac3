#include "qtime_runner/runner.hpp"

#include <future>

#include "qtime/errors.hpp"
#include "qtime_runner/experiments.hpp"
#include "qtime_runner/scenario.hpp"

namespace qtime::runner {

namespace {

std::filesystem::path output_stem(const Scenario& s, const RunOptions& options) {
  std::filesystem::path p = s.output_path;
  if (p.extension() == ".csv" || p.extension() == ".json") p.replace_extension();
  return p.is_absolute() ? p : options.out_dir / p;
}

}  // namespace

ScenarioOutcome run_scenario_file(const std::filesystem::path& file, const RunOptions& options) {
  ScenarioOutcome out;
  out.file = file;
  out.name = file.filename().string();
  try {
    Scenario s = load_scenario(file);
    out.name = s.name;
    if (options.seed) override_seed(s, *options.seed);
    if (options.format) s.format = *options.format;
    auto table = run_experiment(s);
    table.metadata()["output_format"] = s.format == Format::csv ? "csv" : "json";
    out.outputs = write_table(table, output_stem(s, options), s.format);
    out.checks = table.checks();
    if (!table.passed()) {
      out.exit_code = kChecksFailed;
      std::string names;
      for (const auto& n : table.failed_checks()) names += (names.empty() ? "" : ", ") + n;
      out.diagnostic = "failed checks: " + names;
    }
  } catch (const ParseError& e) {
    out.exit_code = kParseError;
    out.diagnostic = std::string("parse error: ") + e.what();
  } catch (const NumericalGuardError& e) {
    out.exit_code = kGuardError;
    out.diagnostic = std::string("numerical guard: ") + e.what();
  } catch (const PreconditionError& e) {
    out.exit_code = kPreconditionError;
    out.diagnostic = std::string("precondition violated: ") + e.what();
  } catch (const std::exception& e) {
    out.exit_code = kPreconditionError;
    out.diagnostic = std::string("error: ") + e.what();
  }
  return out;
}

ResultTable summary_table(const std::string& name, const std::vector<ScenarioOutcome>& outcomes) {
  ResultTable table(name);
  std::vector<std::string> scenario, check, relation, status;
  std::vector<double> value, threshold, passed, exit_code;
  for (const auto& o : outcomes) {
    const auto row = [&](const std::string& c, double v, const std::string& rel, double thr, bool ok) {
      scenario.push_back(o.name);
      check.push_back(c);
      relation.push_back(rel);
      status.push_back(ok ? "pass" : "fail");
      value.push_back(v);
      threshold.push_back(thr);
      passed.push_back(ok ? 1.0 : 0.0);
      exit_code.push_back(o.exit_code);
    };
    if (o.exit_code >= kParseError) {
      row(o.diagnostic, o.exit_code, "", 0.0, false);
      continue;
    }
    for (const auto& c : o.checks) row(c.name, c.value, c.relation, c.threshold, c.passed);
  }
  table.add_text_column("scenario", scenario);
  table.add_text_column("check", check);
  table.add_text_column("relation", relation);
  table.add_text_column("status", status);
  table.add_column("value", value);
  table.add_column("threshold", threshold);
  table.add_column("passed", passed);
  table.add_column("exit_code", exit_code);

  nlohmann::json files = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& o : outcomes) {
    files.push_back({{"scenario", o.name}, {"exit_code", o.exit_code}, {"diagnostic", o.diagnostic}});
    if (o.exit_code != kSuccess) ++failed;
  }
  table.metadata()["scenarios"] = files;
  table.metadata()["failed_scenarios"] = failed;
  table.metadata()["tool_version"] = kToolVersion;
  return table;
}

SuiteOutcome run_suite_file(const std::filesystem::path& file, const RunOptions& options) {
  const Suite suite = load_suite(file);
  SuiteOutcome out;
  out.name = suite.name;

  std::vector<std::future<ScenarioOutcome>> jobs;
  jobs.reserve(suite.scenarios.size());
  for (const auto& path : suite.scenarios) {
    jobs.push_back(std::async(std::launch::async, [path, &options] { return run_scenario_file(path, options); }));
  }
  for (auto& job : jobs) out.scenarios.push_back(job.get());

  const auto table = summary_table(suite.name, out.scenarios);
  out.outputs = write_table(table, options.out_dir / (suite.name + "_summary"), options.format.value_or(Format::csv));
  for (const auto& o : out.scenarios) {
    if (o.exit_code != kSuccess) out.exit_code = kChecksFailed;
  }
  return out;
}

void print_outcome(const ScenarioOutcome& o, std::ostream& os) {
  os << (o.exit_code == kSuccess ? "PASS " : "FAIL ") << o.name << " (" << o.file.string() << ")\n";
  for (const auto& c : o.checks) {
    os << "  " << (c.passed ? "pass " : "FAIL ") << c.name << " = " << format_number(c.value) << ' ' << c.relation
       << ' ' << format_number(c.threshold) << '\n';
  }
  if (!o.diagnostic.empty()) os << "  " << o.diagnostic << '\n';
}

}  // namespace qtime::runner
