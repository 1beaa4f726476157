#include "ramsey/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ramsey/errors.hpp"
#include "ramsey/numerics.hpp"

namespace ramsey {

namespace {
constexpr Real kPi = 3.14159265358979323846;
}

RamseyEngine::RamseyEngine(CouplingMatrices couplings, SensitivityOptions options)
    : couplings_(std::move(couplings)), options_(options), propagator_(couplings_) {
  const int n = n_spins();
  cache_.reserve(static_cast<std::size_t>(n / 2) + 1);
  for (int m = 0; m <= n / 2; ++m) cache_.push_back(make_cache(phase_angles(n, m)));
}

RamseyEngine::SequenceCache RamseyEngine::make_cache(const std::vector<Real>& phases) const {
  const int n = n_spins();
  SequenceCache cache;
  const MatrixC r1 = first_pulse_matrix(n, phases);
  const MatrixC r2 = second_pulse_matrix(n, phases);
  const DensityMatrix ground = ground_state(n);
  cache.rho0 = r1 * ground.rho * r1.adjoint();
  const MatrixC sz = collective_sz(n).matrix;
  cache.sz_back = r2.adjoint() * sz * r2;
  cache.sz2_back = r2.adjoint() * (sz * sz) * r2;
  return cache;
}

namespace {

// signal and second moment of Sz from the frame-rotated state:
// tr(P rho P^+ M) with P = diag(exp(-i phase z_a / 2)).
std::pair<Real, Real> moments_at(const MatrixC& rho_tau, const MatrixC& m1, const MatrixC& m2,
                                 const VectorR& z_diag, Real phase) {
  const Index d = rho_tau.rows();
  VectorC ph(d);
  for (Index a = 0; a < d; ++a) ph[a] = std::exp(Complex(0.0, -0.5 * phase * z_diag[a]));
  Complex s1{};
  Complex s2{};
  for (Index b = 0; b < d; ++b) {
    const Complex pb = std::conj(ph[b]);
    for (Index a = 0; a < d; ++a) {
      const Complex w = rho_tau(a, b) * ph[a] * pb;
      s1 += w * m1(b, a);
      s2 += w * m2(b, a);
    }
  }
  return {s1.real(), s2.real()};
}

}  // namespace

bool RamseyEngine::fast_path() const {
  return options_.integrator.method == Method::automatic ||
         options_.integrator.method == Method::spectral;
}

// moments through the configured integrator; the dense/adaptive routes
// evolve the full generator per detuning instead of reusing the factorised
// core
std::pair<Real, Real> RamseyEngine::moments_slow(const SequenceCache& cache, Real omega,
                                                 Real tau) const {
  const LindbladGenerator generator(couplings_, omega);
  const DensityMatrix rho_tau =
      evolve(generator, {cache.rho0, n_spins()}, tau, options_.integrator);
  const Complex s1 = rho_tau.rho.transpose().cwiseProduct(cache.sz_back).sum();
  const Complex s2 = rho_tau.rho.transpose().cwiseProduct(cache.sz2_back).sum();
  return {s1.real(), s2.real()};
}

std::pair<Real, Real> RamseyEngine::signal(const PulseSequence& seq, Real omega,
                                           Real tau) const {
  if (seq.n_spins != n_spins()) throw std::invalid_argument("signal: spin count mismatch");
  const SequenceCache& cache = cache_.at(static_cast<std::size_t>(seq.phase_index));
  Real s, s2;
  if (fast_path()) {
    const MatrixC rho_tau = propagator_.apply_core(cache.rho0, tau);
    std::tie(s, s2) = moments_at(rho_tau, cache.sz_back, cache.sz2_back,
                                 propagator_.z_diagonal(), omega * tau);
  } else {
    std::tie(s, s2) = moments_slow(cache, omega, tau);
  }
  const Real var = s2 - s * s;
  if (var < -1e-10)
    throw NumericalConsistencyError("signal: negative variance " + std::to_string(var));
  return {s, std::sqrt(std::max(var, Real(0.0)))};
}

std::pair<Real, Real> RamseyEngine::signal_for_phases(const std::vector<Real>& phases,
                                                      Real omega, Real tau) const {
  const SequenceCache cache = make_cache(phases);
  Real s, s2;
  if (fast_path()) {
    const MatrixC rho_tau = propagator_.apply_core(cache.rho0, tau);
    std::tie(s, s2) = moments_at(rho_tau, cache.sz_back, cache.sz2_back,
                                 propagator_.z_diagonal(), omega * tau);
  } else {
    std::tie(s, s2) = moments_slow(cache, omega, tau);
  }
  const Real var = s2 - s * s;
  if (var < -1e-10)
    throw NumericalConsistencyError("signal: negative variance " + std::to_string(var));
  return {s, std::sqrt(std::max(var, Real(0.0)))};
}

SensitivityResult RamseyEngine::run(const SequenceCache& cache, Real tau) const {
  if (tau <= 0.0) throw std::invalid_argument("sensitivity: tau must be positive");
  MatrixC rho_tau;
  if (fast_path()) rho_tau = propagator_.apply_core(cache.rho0, tau);
  const VectorR& z_diag = propagator_.z_diagonal();

  const auto moments = [&](Real omega) {
    if (fast_path())
      return moments_at(rho_tau, cache.sz_back, cache.sz2_back, z_diag, omega * tau);
    return moments_slow(cache, omega, tau);
  };
  const Real step = options_.derivative_step_scale / tau;
  const auto minimand = [&](Real omega) -> Real {
    const Real up = moments(omega + step).first;
    const Real down = moments(omega - step).first;
    const Real derivative = (up - down) / (2.0 * step);
    if (std::abs(derivative) < options_.flat_derivative_floor)
      return std::numeric_limits<Real>::infinity();
    const auto [s, s2] = moments(omega);
    const Real var = std::max(s2 - s * s, Real(0.0));
    return std::sqrt(var) / std::abs(derivative);
  };

  SensitivityResult result;
  result.tau = tau;
  const int n_grid = options_.grid_points;
  result.omega_grid.resize(n_grid);
  result.signal_curve.resize(n_grid);
  result.variance_curve.resize(n_grid);
  int best = -1;
  Real best_value = std::numeric_limits<Real>::infinity();
  for (int k = 0; k < n_grid; ++k) {
    // grid strictly inside (phase_min, phase_max)
    const Real phase = options_.phase_min + (options_.phase_max - options_.phase_min) *
                                                (k + 1.0) / (n_grid + 1.0);
    const Real omega = phase / tau;
    result.omega_grid[k] = omega;
    const auto [s, s2] = moments(omega);
    result.signal_curve[k] = s;
    result.variance_curve[k] = std::sqrt(std::max(s2 - s * s, Real(0.0)));
    const Real value = minimand(omega);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  if (best < 0) throw NoSensitivityError("sensitivity: signal is flat over the search grid");

  const Real grid_step = (options_.phase_max - options_.phase_min) / ((n_grid + 1.0) * tau);
  const Real lo = result.omega_grid[best] - grid_step;
  const Real hi = result.omega_grid[best] + grid_step;
  const GoldenResult refined =
      golden_minimize(minimand, lo, hi, options_.refine_rel_tol, 1e-300 / tau);
  if (!std::isfinite(refined.value))
    throw NoSensitivityError("sensitivity: refinement found no usable derivative");

  result.delta_omega = refined.value;
  result.omega_star = refined.x;
  result.diagnostics.grid_points = n_grid;
  result.diagnostics.boundary_solution = (best == 0 || best == n_grid - 1);
  result.diagnostics.refine_iterations = refined.iterations;
  const Real up = moments(refined.x + step).first;
  const Real down = moments(refined.x - step).first;
  result.diagnostics.derivative_at_optimum = (up - down) / (2.0 * step);
  return result;
}

SensitivityResult RamseyEngine::sensitivity(const PulseSequence& seq, Real tau) const {
  if (seq.n_spins != n_spins())
    throw std::invalid_argument("sensitivity: spin count mismatch");
  return run(cache_.at(static_cast<std::size_t>(seq.phase_index)), tau);
}

SensitivityResult RamseyEngine::sensitivity_for_phases(const std::vector<Real>& phases,
                                                       Real tau) const {
  return run(make_cache(phases), tau);
}

std::pair<Real, Real> ramsey_signal(const CouplingMatrices& couplings, const PulseSequence& seq,
                                    Real omega, Real tau, const SensitivityOptions& options) {
  if (tau < 0.0) throw std::invalid_argument("ramsey_signal: tau must be non-negative");
  const RamseyEngine engine(couplings, options);
  return engine.signal(seq, omega, tau);
}

SensitivityResult sensitivity(const CouplingMatrices& couplings, const PulseSequence& seq,
                              Real tau, const SensitivityOptions& options) {
  const RamseyEngine engine(couplings, options);
  return engine.sensitivity(seq, tau);
}

std::vector<SensitivityResult> sensitivity_vs_tau(const CouplingMatrices& couplings,
                                                  const PulseSequence& seq,
                                                  const std::vector<Real>& tau_grid,
                                                  const SensitivityOptions& options,
                                                  int n_threads) {
  if (tau_grid.empty()) throw std::invalid_argument("sensitivity_vs_tau: empty grid");
  if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
    throw std::invalid_argument("sensitivity_vs_tau: grid must be ascending");
  const RamseyEngine engine(couplings, options);
  std::vector<SensitivityResult> results(tau_grid.size());
  parallel_for(tau_grid.size(), n_threads,
               [&](std::size_t i) { results[i] = engine.sensitivity(seq, tau_grid[i]); });
  return results;
}

Real independent_sensitivity(int n_spins, Real tau, Real gamma) {
  if (n_spins < 1) throw std::invalid_argument("independent_sensitivity: need spins");
  if (tau <= 0.0) throw std::invalid_argument("independent_sensitivity: tau must be positive");
  return std::exp(gamma * tau / 2.0) / (tau * std::sqrt(static_cast<Real>(n_spins)));
}

Real tilt_angle_for_phase(int n_spins, Real spacing, int phase_index) {
  if (n_spins < 1) throw std::invalid_argument("tilt_angle_for_phase: need spins");
  if (spacing <= 0.0) throw std::invalid_argument("tilt_angle_for_phase: spacing must be positive");
  if (phase_index < 1)
    throw std::invalid_argument("tilt_angle_for_phase: phase index must be >= 1");
  const Real argument = static_cast<Real>(n_spins) * spacing / phase_index;
  if (argument > 1.0)
    throw NotRealizableError("tilt_angle_for_phase: N a / (m lambda0) = " +
                             std::to_string(argument) + " exceeds 1");
  return std::acos(argument);
}

}  // namespace ramsey
