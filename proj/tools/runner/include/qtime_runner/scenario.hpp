#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtime/physical_constants.hpp"
#include "qtime_runner/writers.hpp"

namespace qtime::runner {

/// Malformed or incomplete configuration (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { synthesize, moments, uncertainty, dwell, photon, hamiltonian_check, discrete };

Kind parse_kind(const std::string& text);
std::string kind_name(Kind kind);

struct Scenario {
  std::string name;
  Kind kind;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json grids = nlohmann::json::object();
  PhysicalConstants constants;
  /// Output stem relative to the output directory; the extension follows the format.
  std::string output_path;
  Format format = Format::csv;
  /// The parsed document, echoed into the result metadata.
  nlohmann::json source;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double grid(const std::string& key, double fallback) const;
  bool has(const std::string& key) const { return parameters.contains(key); }
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Replaces every "seed" parameter.
void override_seed(Scenario& scenario, long long seed);

struct Suite {
  std::string name;
  /// Scenario files resolved against the suite file's directory.
  std::vector<std::filesystem::path> scenarios;
};

Suite parse_suite(const std::string& text, const std::filesystem::path& base_dir);
Suite load_suite(const std::filesystem::path& path);

}  // namespace qtime::runner
