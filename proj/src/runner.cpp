#include "ramsey/runner.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/errors.hpp"
#include "ramsey/numerics.hpp"
#include "ramsey/pulses.hpp"
#include "ramsey/sensitivity.hpp"
#include "ramsey/spectral.hpp"
#include "ramsey/two_atom.hpp"

namespace ramsey {

namespace {

constexpr Real kPi = 3.14159265358979323846;

SensitivityOptions options_from(const RunConfig& config) {
  SensitivityOptions options;
  options.grid_points = config.omega_points;
  options.phase_min = config.omega_phase_min;
  options.phase_max = config.omega_phase_max;
  options.integrator = config.integrator;
  return options;
}

const GeometryConfig& require_geometry(const RunConfig& config) {
  if (!config.geometry) throw ConfigError("config: [geometry] section is required");
  return *config.geometry;
}

std::vector<Real> require_tau(const RunConfig& config) {
  if (!config.tau) throw ConfigError("config: [tau] section is required");
  return config.tau->values();
}

void check_finite_positive(Real delta_omega) {
  if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
    throw NumericalConsistencyError("sweep: sensitivity must be positive and finite, got " +
                                    format_double(delta_omega));
}

}  // namespace

RunResult run_couplings(const RunConfig& config) {
  if (!config.couplings_r) throw ConfigError("config: [couplings] section is required");
  const std::vector<Real> grid = config.couplings_r->values();
  const Real cos_theta = config.couplings_cos_theta;

  RunResult result;
  result.table.comments = {"pair couplings: mutual decay rate and dipole-dipole shift",
                           "r in units of lambda0, rates in units of gamma, cos_theta = " +
                               format_double(cos_theta)};
  result.table.columns = {"r_over_lambda", "gamma12_over_gamma", "omega12_over_gamma"};
  for (const Real r : grid)
    result.table.rows.push_back({r, decay_kernel(r, cos_theta), shift_kernel(r, cos_theta)});
  return result;
}

RunResult run_sensitivity_sweep(const RunConfig& config, int n_threads) {
  const GeometryConfig& geometry = require_geometry(config);
  const CouplingMatrices couplings = couplings_from_config(geometry);
  const std::vector<Real> taus = require_tau(config);
  const int n = couplings.size();
  const Real gamma = couplings.gamma;

  std::vector<PulseSequence> sequences;
  for (const int m : config.schemes) {
    try {
      sequences.push_back(make_sequence(n, m));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  const RamseyEngine engine(couplings, options_from(config));
  const std::size_t total = sequences.size() * taus.size();
  std::vector<std::optional<SensitivityResult>> points(total);
  std::vector<std::string> errors(total);
  parallel_for(total, n_threads, [&](std::size_t idx) {
    const std::size_t i_m = idx / taus.size();
    const std::size_t i_tau = idx % taus.size();
    try {
      auto point = engine.sensitivity(sequences[i_m], taus[i_tau]);
      check_finite_positive(point.delta_omega);
      points[idx] = std::move(point);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  });

  const Real norm = config.raw ? 1.0 : std::sqrt(static_cast<Real>(n)) / gamma;
  RunResult result;
  result.table.comments = {
      "ramsey sensitivity sweep, N = " + std::to_string(n),
      config.raw ? "raw delta_omega and omega_star"
                 : "delta_omega scaled by sqrt(N)/gamma; omega_star and tau in gamma units",
      "m = -1 rows: uncoupled-atom closed form exp(gamma tau/2)/(tau sqrt(N))"};
  result.table.columns = {"tau_gamma", "m", "delta_omega", "omega_star"};

  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t i_m = idx / taus.size();
    const std::size_t i_tau = idx % taus.size();
    if (!points[idx]) {
      result.table.trailing_comments.push_back(
          "FAILED at m = " + std::to_string(sequences[i_m].phase_index) +
          ", tau*gamma = " + format_double(taus[i_tau] * gamma) + ": " + errors[idx]);
      result.failure = errors[idx];
      return result;
    }
    const auto& point = *points[idx];
    result.table.rows.push_back({taus[i_tau] * gamma,
                                 static_cast<Real>(sequences[i_m].phase_index),
                                 point.delta_omega * norm,
                                 config.raw ? point.omega_star : point.omega_star / gamma});
  }
  for (const Real tau : taus) {
    const Real reference = independent_sensitivity(n, tau, gamma);
    result.table.rows.push_back(
        {tau * gamma, -1.0, reference * norm,
         config.raw ? (kPi / 2.0) / tau : (kPi / 2.0) / (tau * gamma)});
  }
  return result;
}

RunResult run_two_atom(const RunConfig& config, int n_threads) {
  if (!config.two_atom_r) throw ConfigError("config: [two_atom] section is required");
  const std::vector<Real> taus = require_tau(config);
  const Real r = *config.two_atom_r;

  const CouplingMatrices couplings = coupling_matrices(build_chain(2, r));
  const TwoAtomParams params = two_atom_params(couplings);
  const RamseyEngine engine(couplings, options_from(config));
  const PulseSequence symmetric = make_sequence(2, 0);
  const PulseSequence asymmetric = make_sequence(2, 1);

  struct Row {
    Real analytic_s, analytic_a, numeric_s, numeric_a;
  };
  std::vector<std::optional<Row>> rows(taus.size());
  std::vector<std::string> errors(taus.size());
  parallel_for(taus.size(), n_threads, [&](std::size_t i) {
    try {
      Row row{};
      row.analytic_s = closed_form_sensitivity(params, taus[i], Scheme::symmetric);
      row.analytic_a = closed_form_sensitivity(params, taus[i], Scheme::asymmetric);
      row.numeric_s = engine.sensitivity(symmetric, taus[i]).delta_omega;
      row.numeric_a = engine.sensitivity(asymmetric, taus[i]).delta_omega;
      check_finite_positive(row.numeric_s);
      check_finite_positive(row.numeric_a);
      rows[i] = row;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  const Real norm = config.raw ? 1.0 : std::sqrt(2.0) / params.gamma;
  RunResult result;
  result.table.comments = {
      "two-atom closed forms vs the numerical pipeline at r/lambda = " + format_double(r),
      "gamma12/gamma = " + format_double(params.gamma_cross / params.gamma) +
          ", omega12/gamma = " + format_double(params.omega_shift / params.gamma),
      config.raw ? "raw delta_omega" : "delta_omega scaled by sqrt(2)/gamma"};
  result.table.columns = {"tau_gamma",       "delta_s_analytic", "delta_a_analytic",
                          "delta_s_numeric", "delta_a_numeric",  "rel_dev_s",
                          "rel_dev_a"};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!rows[i]) {
      result.table.trailing_comments.push_back(
          "FAILED at tau*gamma = " + format_double(taus[i] * params.gamma) + ": " + errors[i]);
      result.failure = errors[i];
      return result;
    }
    const Row& row = *rows[i];
    result.table.rows.push_back({taus[i] * params.gamma, row.analytic_s * norm,
                                 row.analytic_a * norm, row.numeric_s * norm,
                                 row.numeric_a * norm,
                                 (row.analytic_s - row.numeric_s) / row.numeric_s,
                                 (row.analytic_a - row.numeric_a) / row.numeric_a});
  }
  result.table.trailing_comments = {
      "empirical normalisation of the published collective-basis formulas: tr(rho_f Sz) = nu * "
      "printed signal with nu = " +
          format_double(signal_normalization(Scheme::symmetric)) + " (symmetric), " +
          format_double(signal_normalization(Scheme::asymmetric)) + " (asymmetric)",
      "<Sz^2> = " + format_double(second_moment_normalization()) +
          " * printed second moment (both schemes)"};
  return result;
}

RunResult run_dicke_spectrum(const RunConfig& config) {
  const GeometryConfig& geometry = require_geometry(config);
  if (geometry.builder != "dicke")
    throw ConfigError("config: dicke-spectrum requires [geometry] builder = dicke");
  const CouplingMatrices couplings = couplings_from_config(geometry);
  const int n = couplings.size();

  PulseSequence symmetric = make_sequence(n, 0);
  PulseSequence asymmetric;
  try {
    asymmetric = make_sequence(n, config.dicke_m_asym);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  const SpectralDecomposition decomposition = decompose(couplings, 0.0);
  const DensityMatrix ground = ground_state(n);
  const DensityMatrix prepared_sym = first_pulse(ground, symmetric);
  const DensityMatrix prepared_asym = first_pulse(ground, asymmetric);
  const VectorR w_sym = population_histogram(decomposition, prepared_sym);
  const VectorR w_asym = population_histogram(decomposition, prepared_asym);

  RunResult result;
  result.table.comments = {
      "equal-coupling spectrum: effective decay rates and prepared-state occupancies",
      "N = " + std::to_string(n) + ", asymmetric scheme m = " +
          std::to_string(asymmetric.phase_index) + ", rates in units of gamma",
      "states ordered by increasing effective decay rate"};
  result.table.columns = {"state_index", "excitation", "rate_over_gamma", "w_symmetric",
                          "w_asymmetric"};
  int rank = 0;
  for (const int j : decomposition.sort_order) {
    result.table.rows.push_back({static_cast<Real>(rank++),
                                 static_cast<Real>(decomposition.excitation[j]),
                                 decomposition.decay_rates[j] / couplings.gamma, w_sym[j],
                                 w_asym[j]});
  }
  const Real mean_sym = mean_decay_rate(decomposition, w_sym) / couplings.gamma;
  const Real mean_asym = mean_decay_rate(decomposition, w_asym) / couplings.gamma;
  const SpinOperator sz = collective_sz(n);
  const auto mean_excitation = [&](const DensityMatrix& rho) {
    return expectation(rho, sz).real() + 0.5 * n;
  };
  result.table.trailing_comments = {
      "mean rate symmetric = " + format_double(mean_sym) +
          " gamma; per excitation = " + format_double(mean_sym / mean_excitation(prepared_sym)),
      "mean rate asymmetric = " + format_double(mean_asym) + " gamma; per excitation = " +
          format_double(mean_asym / mean_excitation(prepared_asym))};
  return result;
}

}  // namespace ramsey
