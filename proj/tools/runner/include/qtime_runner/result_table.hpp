#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtime/numerics.hpp"

namespace qtime::runner {

struct Check {
  std::string name;
  double value;
  std::string relation;  // "<", "<=", ">", ">=", "=="
  double threshold;
  bool passed;
};

/// Named columns of equal length plus checks and metadata.
class ResultTable {
 public:
  explicit ResultTable(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  void add_column(const std::string& name, std::vector<double> values);
  /// Stored as `<name>_re` and `<name>_im`.
  void add_complex_column(const std::string& name, std::span<const cplx> values);
  void add_text_column(const std::string& name, std::vector<std::string> values);

  const Check& add_check(const std::string& name, double value, const std::string& relation, double threshold);
  void add_flag(const std::string& name, bool passed);

  const std::map<std::string, std::vector<double>>& numeric() const { return numeric_; }
  const std::map<std::string, std::vector<std::string>>& text() const { return text_; }
  const std::vector<Check>& checks() const { return checks_; }
  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  std::size_t rows() const;
  bool passed() const;
  std::vector<std::string> failed_checks() const;

 private:
  void check_length(const std::string& name, std::size_t size) const;

  std::string name_;
  std::map<std::string, std::vector<double>> numeric_;
  std::map<std::string, std::vector<std::string>> text_;
  std::vector<Check> checks_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

}  // namespace qtime::runner
