#pragma once

#include <optional>
#include <string>

#include "ramsey/config.hpp"
#include "ramsey/output.hpp"

namespace ramsey {

// Output table of one subcommand; `failure` carries the first numerical
// error when a sweep aborted after flushing partial rows.
struct RunResult {
  Table table;
  std::optional<std::string> failure;
};

// Pair coupling curves Gamma_12(r)/Gamma, Omega_12(r)/Gamma.
RunResult run_couplings(const RunConfig& config);

// delta omega over the tau grid for each requested scheme plus the
// independent-atom reference (emitted as m = -1 rows).
RunResult run_sensitivity_sweep(const RunConfig& config, int n_threads = 1);

// Closed-form two-atom sensitivities against the numerical pipeline.
RunResult run_two_atom(const RunConfig& config, int n_threads = 1);

// Eigenstate decay rates and prepared-state occupancies.
RunResult run_dicke_spectrum(const RunConfig& config);

}  // namespace ramsey
