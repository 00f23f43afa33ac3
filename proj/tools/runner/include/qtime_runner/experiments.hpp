#pragma once

#include "qtime_runner/result_table.hpp"
#include "qtime_runner/scenario.hpp"

namespace qtime::runner {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the experiment named by scenario.kind. Module errors propagate
/// unchanged (PreconditionError, NumericalGuardError).
ResultTable run_experiment(const Scenario& scenario);

ResultTable run_synthesize(const Scenario& scenario);
ResultTable run_moments(const Scenario& scenario);
ResultTable run_uncertainty(const Scenario& scenario);
ResultTable run_dwell(const Scenario& scenario);
ResultTable run_photon(const Scenario& scenario);
ResultTable run_hamiltonian_check(const Scenario& scenario);
ResultTable run_discrete(const Scenario& scenario);

}  // namespace qtime::runner
