#include <iostream>

#include <CLI11.hpp>

#include "qtime_runner/runner.hpp"
#include "qtime_runner/scenario.hpp"

using namespace qtime::runner;

int main(int argc, char** argv) {
  CLI::App app{"Passage-time experiments for quantum and photon wavepackets"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string out_dir = ".";
  std::string format;
  long long seed = 0;
  app.add_option("--out-dir", out_dir, "Directory for result files")->capture_default_str();
  app.add_option("--format", format, "Override the output format")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "Override the seed of randomized scenarios");

  std::string scenario_file, suite_file;
  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  auto* suite = app.add_subcommand("suite", "Run every scenario listed in a suite file");
  suite->add_option("suite", suite_file, "Suite JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  RunOptions options;
  options.out_dir = out_dir;
  if (!format.empty()) options.format = parse_format(format);
  if (*seed_opt) options.seed = seed;

  if (*run) {
    const auto outcome = run_scenario_file(scenario_file, options);
    print_outcome(outcome, outcome.exit_code == kSuccess ? std::cout : std::cerr);
    for (const auto& p : outcome.outputs) std::cout << "wrote " << p.string() << '\n';
    return outcome.exit_code;
  }

  try {
    const auto outcome = run_suite_file(suite_file, options);
    std::size_t failed = 0;
    for (const auto& o : outcome.scenarios) {
      print_outcome(o, std::cout);
      if (o.exit_code != kSuccess) ++failed;
    }
    std::cout << outcome.name << ": " << outcome.scenarios.size() - failed << '/' << outcome.scenarios.size()
              << " scenarios passed\n";
    for (const auto& p : outcome.outputs) std::cout << "wrote " << p.string() << '\n';
    return outcome.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPreconditionError;
  }
}
