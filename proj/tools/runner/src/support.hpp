#pragma once

#include <algorithm>
#include <cmath>

#include "qtime_runner/experiments.hpp"

namespace qtime::runner::detail {

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline ResultTable make_table(const Scenario& s) {
  ResultTable table(s.name);
  table.metadata()["scenario"] = s.source;
  table.metadata()["tool_version"] = kToolVersion;
  table.metadata()["kind"] = kind_name(s.kind);
  return table;
}

}  // namespace qtime::runner::detail
