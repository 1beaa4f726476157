#pragma once

#include <vector>

#include "ramsey/density_matrix.hpp"
#include "ramsey/ensemble.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// Hamiltonian eigenbasis with per-state effective decay rates
//   Gamma_j = sum_kl Gamma_kl <phi_j| s_k^+ s_l^- |phi_j>,
// the initial population loss rate of |phi_j>. Both H and the decay
// functional conserve excitation number, so states are computed sector by
// sector; inside degenerate H blocks the decay functional is diagonalised,
// which makes the rates basis independent.
struct SpectralDecomposition {
  MatrixC eigenstates;          // columns |phi_j>, storage order
  VectorR decay_rates;          // Gamma_j
  VectorR energies;             // H eigenvalues
  std::vector<int> excitation;  // sharp excitation number per state
  std::vector<int> sort_order;  // Gamma_j ascending; ties by excitation, then
                                // lexicographic comparison under the
                                // first-amplitude-real-positive phase fix
  bool simultaneous = true;     // H commutes with the decay functional
};

// G = sum_kl Gamma_kl s_k^+ s_l^-.
MatrixC decay_functional(const CouplingMatrices& couplings);

SpectralDecomposition decompose(const CouplingMatrices& couplings, Real detuning);

// w_j = <phi_j| rho |phi_j> in storage order; sums to one.
VectorR population_histogram(const SpectralDecomposition& decomposition,
                             const DensityMatrix& state);

Real mean_decay_rate(const SpectralDecomposition& decomposition, const VectorR& weights);

}  // namespace ramsey
