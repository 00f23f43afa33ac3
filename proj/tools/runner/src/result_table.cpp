#include "qtime_runner/result_table.hpp"

#include <stdexcept>

namespace qtime::runner {

void ResultTable::check_length(const std::string& name, std::size_t size) const {
  if (numeric_.count(name) || text_.count(name)) throw std::logic_error("duplicate column " + name);
  if ((!numeric_.empty() || !text_.empty()) && size != rows()) {
    throw std::logic_error("column " + name + " has a different length");
  }
}

void ResultTable::add_column(const std::string& name, std::vector<double> values) {
  check_length(name, values.size());
  numeric_.emplace(name, std::move(values));
}

void ResultTable::add_complex_column(const std::string& name, std::span<const cplx> values) {
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  add_column(name + "_re", std::move(re));
  add_column(name + "_im", std::move(im));
}

void ResultTable::add_text_column(const std::string& name, std::vector<std::string> values) {
  check_length(name, values.size());
  text_.emplace(name, std::move(values));
}

const Check& ResultTable::add_check(const std::string& name, double value, const std::string& relation,
                                    double threshold) {
  bool ok = false;
  if (relation == "<") ok = value < threshold;
  else if (relation == "<=") ok = value <= threshold;
  else if (relation == ">") ok = value > threshold;
  else if (relation == ">=") ok = value >= threshold;
  else if (relation == "==") ok = value == threshold;
  else throw std::logic_error("unknown relation " + relation);
  checks_.push_back({name, value, relation, threshold, ok});
  return checks_.back();
}

void ResultTable::add_flag(const std::string& name, bool passed) { add_check(name, passed ? 1.0 : 0.0, "==", 1.0); }

std::size_t ResultTable::rows() const {
  if (!numeric_.empty()) return numeric_.begin()->second.size();
  if (!text_.empty()) return text_.begin()->second.size();
  return 0;
}

bool ResultTable::passed() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<std::string> ResultTable::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

}  // namespace qtime::runner
