#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ramsey/dynamics.hpp"
#include "ramsey/ensemble.hpp"
#include "ramsey/pulses.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

struct SensitivityOptions {
  // Coarse scan of omega*tau on (phase_min, phase_max), then golden-section
  // refinement around the best grid point.
  int grid_points = 201;
  Real phase_min = 0.0;
  Real phase_max = 3.14159265358979323846;
  Real refine_rel_tol = 1e-10;
  // Central finite-difference step for d<Sz>/d omega is step_scale / tau;
  // truncation error is O(step^2).
  Real derivative_step_scale = 1e-5;
  Real flat_derivative_floor = 1e-12;
  IntegratorOptions integrator;
};

struct SensitivityDiagnostics {
  Real derivative_at_optimum = 0.0;
  int grid_points = 0;
  bool boundary_solution = false;
  int refine_iterations = 0;
};

struct SensitivityResult {
  Real delta_omega = 0.0;
  Real omega_star = 0.0;
  Real tau = 0.0;
  VectorR omega_grid;
  VectorR signal_curve;
  VectorR variance_curve;
  SensitivityDiagnostics diagnostics;
};

// Shares the propagator and per-sequence pulse caches across sweep points;
// one spectral factorisation serves every (m, omega, tau) evaluation.
class RamseyEngine {
 public:
  explicit RamseyEngine(CouplingMatrices couplings, SensitivityOptions options = {});

  int n_spins() const { return couplings_.size(); }
  const CouplingMatrices& couplings() const { return couplings_; }
  const SensitivityOptions& options() const { return options_; }

  std::pair<Real, Real> signal(const PulseSequence& seq, Real omega, Real tau) const;
  SensitivityResult sensitivity(const PulseSequence& seq, Real tau) const;

  // Same pipeline for an arbitrary phase set (not restricted to m <= N/2).
  std::pair<Real, Real> signal_for_phases(const std::vector<Real>& phases, Real omega,
                                          Real tau) const;
  SensitivityResult sensitivity_for_phases(const std::vector<Real>& phases, Real tau) const;

 private:
  struct SequenceCache {
    MatrixC rho0;        // R1 |G><G| R1^dagger
    MatrixC sz_back;     // R2^dagger Sz R2
    MatrixC sz2_back;    // R2^dagger Sz^2 R2
  };

  SequenceCache make_cache(const std::vector<Real>& phases) const;
  SensitivityResult run(const SequenceCache& cache, Real tau) const;
  bool fast_path() const;
  std::pair<Real, Real> moments_slow(const SequenceCache& cache, Real omega, Real tau) const;

  CouplingMatrices couplings_;
  SensitivityOptions options_;
  std::optional<Propagator> propagator_;  // absent beyond six spins
  std::vector<SequenceCache> cache_;      // indexed by m
};

// Detected signal <Sz> and its projection-noise spread Delta Sz after the
// full pulse - evolve - pulse sequence.
std::pair<Real, Real> ramsey_signal(const CouplingMatrices& couplings,
                                    const PulseSequence& seq, Real omega, Real tau,
                                    const SensitivityOptions& options = {});

// delta omega = min_omega Delta Sz / |d<Sz>/d omega| at fixed tau.
SensitivityResult sensitivity(const CouplingMatrices& couplings, const PulseSequence& seq,
                              Real tau, const SensitivityOptions& options = {});

std::vector<SensitivityResult> sensitivity_vs_tau(const CouplingMatrices& couplings,
                                                  const PulseSequence& seq,
                                                  const std::vector<Real>& tau_grid,
                                                  const SensitivityOptions& options = {},
                                                  int n_threads = 1);

// Closed form for uncoupled atoms: exp(Gamma tau / 2) / (tau sqrt(N)).
Real independent_sensitivity(int n_spins, Real tau, Real gamma = 1.0);

// Tilt angle alpha with cos(alpha) = N a / (m lambda0), imprinting the
// phase set phi_j via a beam along the chain; spacing in lambda0 units.
Real tilt_angle_for_phase(int n_spins, Real spacing, int phase_index);

}  // namespace ramsey
