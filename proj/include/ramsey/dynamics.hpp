#pragma once

#include <memory>
#include <vector>

#include "ramsey/density_matrix.hpp"
#include "ramsey/ensemble.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

enum class Method { automatic, spectral, expm, rk45 };

struct IntegratorOptions {
  Method method = Method::automatic;
  Real rtol = 1e-9;
  Real atol = 1e-12;
};

// Propagates the detuning-free part of the master equation
//   drho/dt = i[rho, H0] + (1/2) sum_ij Gamma_ij (2 s_i rho s_j^+ - {s_i^+ s_j, rho})
// by spectral resolution of the vectorised generator. The generator conserves
// the excitation-number difference between bra and ket indices, so it splits
// into 2N+1 independent blocks that are diagonalised once and reused across
// the whole tau grid. The detuning term commutes with everything above and is
// applied exactly as the diagonal frame rotation
//   rho(tau) = exp(-i omega tau Z/2) exp(L0 tau)[rho] exp(+i omega tau Z/2),
// Z = sum_i sigma_i^z.
class Propagator {
 public:
  explicit Propagator(const CouplingMatrices& couplings);

  int n_spins() const { return n_spins_; }
  Index dim() const { return dim_; }

  // exp(L0 tau)[rho] without the detuning rotation; result is hermitised.
  MatrixC apply_core(const MatrixC& rho, Real tau) const;

  // Full propagation including the detuning frame rotation.
  MatrixC apply(const MatrixC& rho, Real tau, Real detuning) const;

  // Diagonal frame rotation alone.
  void rotate_frame(MatrixC& rho, Real phase) const;

  const VectorR& z_diagonal() const { return z_diag_; }

  bool fully_spectral() const;  // all blocks passed the eigenbasis residual check

 private:
  struct Block {
    std::vector<Index> indices;  // vec(rho) entries, column stacking
    MatrixC matrix;
    MatrixC vectors;
    MatrixC vectors_inverse;
    VectorC eigenvalues;
    bool spectral_ok = false;
  };

  int n_spins_ = 0;
  Index dim_ = 0;
  VectorR z_diag_;
  std::vector<Block> blocks_;
};

// Generator of the free evolution between the Ramsey pulses:
//   H = (omega/2) sum_i sigma_i^z + sum_{i != j} Omega_ij s_i^+ s_j^-
// with the dissipator of mutual decay rates Gamma_ij.
class LindbladGenerator {
 public:
  LindbladGenerator(CouplingMatrices couplings, Real detuning);

  int n_spins() const { return couplings_.size(); }
  Index dim() const { return dim_for(n_spins()); }
  Real detuning() const { return detuning_; }
  const CouplingMatrices& couplings() const { return couplings_; }
  const MatrixC& hamiltonian() const { return hamiltonian_; }
  const MatrixR& gamma_matrix() const { return couplings_.gamma_matrix; }

  // Dense vectorised Liouvillian including the detuning term.
  MatrixC liouvillian_matrix() const;

  // Shared detuning-free propagator, built on first use (n <= 6 only).
  const Propagator& propagator() const;

 private:
  CouplingMatrices couplings_;
  Real detuning_ = 0.0;
  MatrixC hamiltonian_;
  mutable std::shared_ptr<const Propagator> propagator_;
};

LindbladGenerator build_generator(const CouplingMatrices& couplings, Real detuning);

DensityMatrix evolve(const LindbladGenerator& generator, const DensityMatrix& rho,
                     Real tau, const IntegratorOptions& options = {});

// One evolved state per (detuning, tau) pair, row-major over detunings.
struct EvolutionTable {
  std::vector<Real> detunings;
  std::vector<Real> taus;
  std::vector<DensityMatrix> states;

  const DensityMatrix& at(std::size_t i_detuning, std::size_t i_tau) const {
    return states[i_detuning * taus.size() + i_tau];
  }
};

EvolutionTable evolve_batch(const CouplingMatrices& couplings,
                            const std::vector<Real>& detunings,
                            const DensityMatrix& rho0, const std::vector<Real>& taus,
                            const IntegratorOptions& options = {});

// Dense vectorised Liouvillian for arbitrary couplings and detuning.
MatrixC liouvillian_matrix(const CouplingMatrices& couplings, Real detuning);

}  // namespace ramsey
