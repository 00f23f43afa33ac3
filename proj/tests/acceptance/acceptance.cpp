// Runs the acceptance suite twice and reports one line per criterion.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtime_runner/runner.hpp"
#include "qtime_runner/writers.hpp"

namespace fs = std::filesystem;
using namespace qtime::runner;

namespace {

struct Item {
  std::string scenario;
  std::string check;
  bool counted = true;  // informational lines do not decide the criterion
};

struct Criterion {
  std::string title;
  std::vector<Item> items;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"1 dual-representation equivalence (>= 20 random spectra, n = 1, 2)",
       {{"moments_random", "max_dual_gap_order_1"},
        {"moments_random", "max_dual_gap_order_2"},
        {"moments_random", "sample_count"},
        {"moments_gaussian", "dual_gap_order_1"},
        {"moments_gaussian", "dual_gap_order_2"},
        {"moments_gaussian", "bilinear_vs_energy_rep_gap"}}},
      {"2 Ehrenfest correspondence (quasi-monochromatic)",
       {{"ehrenfest", "ehrenfest_relative_error"}, {"ehrenfest", "quasi_monochromatic_ratio"}}},
      {"3 uncertainty bound (>= 100 random spectra, near-minimal packet)",
       {{"uncertainty_random", "min_product_minus_bound"},
        {"uncertainty_random", "sample_count"},
        {"uncertainty_random", "near_minimal_relative_distance"}}},
      {"4 dwell-time equality and transfer-matrix transmission",
       {{"dwell_free", "dwell_relative_gap"},
        {"dwell_free", "unitarity_error"},
        {"dwell_under_barrier", "dwell_relative_gap"},
        {"dwell_under_barrier", "transmission_closed_form_error"},
        {"dwell_under_barrier", "unitarity_error"},
        {"dwell_over_barrier", "dwell_relative_gap"},
        {"dwell_over_barrier", "transmission_closed_form_error"},
        {"dwell_over_barrier", "unitarity_error"}}},
      {"5 continuity residuals (particle and photon)",
       {{"synthesize_energy", "continuity_residual"},
        {"synthesize_energy", "continuity_halving_ratio"},
        {"synthesize_momentum", "continuity_residual"},
        {"synthesize_momentum", "continuity_halving_ratio"},
        {"photon", "continuity_residual"},
        {"photon", "continuity_halving_ratio"}}},
      {"6 momentum two-component norm",
       {{"synthesize_momentum", "two_component_norm_error"},
        {"synthesize_energy", "flux_vs_density_norm_gap", false}}},
      {"7 photon passage times",
       {{"photon", "passage_delay_relative_error"},
        {"photon", "dual_gap_order_1"},
        {"photon", "dual_gap_order_2"}}},
      {"8 Hamiltonian-form time operator",
       {{"hamiltonian_check", "eigenvalue_literal_error"},
        {"hamiltonian_check", "eigenvalue_real_part_error", false},
        {"hamiltonian_check", "commutator_residual"},
        {"hamiltonian_check", "commutator_halving_ratio"},
        {"hamiltonian_check", "energy_route_equivalence"},
        {"hamiltonian_check", "hermiticity_error"}}},
      {"9 discrete spectrum",
       {{"discrete_random", "periodicity_error"},
        {"discrete_random", "system_count"},
        {"discrete_random", "bound_violations"},
        {"discrete_random", "robertson_violations", false},
        {"discrete_random", "single_level_rhs"},
        {"discrete_random", "two_level_dual_gap_over_period"},
        {"discrete_random", "continuum_limit_order_low"},
        {"discrete_random", "continuum_limit_order_high"},
        {"discrete_two_level", "periodicity_error"},
        {"discrete_two_level", "two_level_dual_gap_over_period"},
        {"discrete_two_level", "bound_violations"},
        {"discrete_two_level", "robertson_violations", false}}},
  };
  return list;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative path -> bytes for every regular file below `root`.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return files;
}

std::string describe(const Check& c) {
  return c.name + " = " + format_number(c.value) + " " + c.relation + " " + format_number(c.threshold);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out_dir = "acceptance_out";
  std::string suite_file = std::string(QTIME_SCENARIO_DIR) + "/acceptance_suite.json";
  app.add_option("--out-dir", out_dir, "Scratch directory for suite outputs");
  app.add_option("--suite", suite_file, "Suite file");
  CLI11_PARSE(app, argc, argv);

  const fs::path root(out_dir);
  fs::remove_all(root);
  const auto start = std::chrono::steady_clock::now();
  SuiteOutcome first;
  try {
    first = run_suite_file(suite_file, {.out_dir = root / "run1", .format = {}, .seed = {}});
  } catch (const std::exception& e) {
    std::printf("FAIL suite could not be loaded: %s\n", e.what());
    return 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto second = run_suite_file(suite_file, {.out_dir = root / "run2", .format = {}, .seed = {}});

  std::map<std::string, const ScenarioOutcome*> by_name;
  for (const auto& o : first.scenarios) by_name[o.name] = &o;

  std::size_t failed = 0;
  for (const auto& criterion : criteria()) {
    bool ok = true;
    std::vector<std::string> lines;
    for (const auto& item : criterion.items) {
      const auto it = by_name.find(item.scenario);
      if (it == by_name.end()) {
        ok = ok && !item.counted;
        lines.push_back("    missing scenario " + item.scenario);
        continue;
      }
      const ScenarioOutcome& o = *it->second;
      if (o.exit_code != kSuccess && o.exit_code != kChecksFailed) {
        ok = ok && !item.counted;
        lines.push_back("    " + item.scenario + ": error (exit " + std::to_string(o.exit_code) + ") " + o.diagnostic);
        continue;
      }
      const Check* found = nullptr;
      for (const auto& c : o.checks) {
        if (c.name == item.check) found = &c;
      }
      if (!found) {
        ok = ok && !item.counted;
        lines.push_back("    " + item.scenario + ": check " + item.check + " not reported");
        continue;
      }
      if (item.counted) ok = ok && found->passed;
      const std::string tag = !item.counted ? "info" : found->passed ? "pass" : "FAIL";
      lines.push_back("    " + tag + " " + item.scenario + ": " + describe(*found));
    }
    std::printf("%s criterion %s\n", ok ? "PASS" : "FAIL", criterion.title.c_str());
    for (const auto& l : lines) std::printf("%s\n", l.c_str());
    if (!ok) ++failed;
  }

  const auto a = snapshot(root / "run1"), b = snapshot(root / "run2");
  std::size_t differing = a.size() == b.size() ? 0 : 1;
  for (const auto& [path, bytes] : a) {
    const auto other = b.find(path);
    if (other == b.end() || other->second != bytes) ++differing;
  }
  const bool deterministic = differing == 0 && !a.empty();
  const bool fast = seconds < 300.0;
  std::printf("%s criterion 10 determinism and runtime\n", deterministic && fast ? "PASS" : "FAIL");
  std::printf("    %s %zu output files compared, %zu differ\n", deterministic ? "pass" : "FAIL", a.size(), differing);
  std::printf("    %s suite runtime %.1f s < 300 s\n", fast ? "pass" : "FAIL", seconds);
  if (!(deterministic && fast)) ++failed;

  std::printf("%zu of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
