#pragma once

#include <vector>

#include "ramsey/density_matrix.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// Ramsey pulse pair with per-spin phase spread
//   R1 = prod_j Rz^{(j)}[phi_j] Ry^{(j)}[pi/2],
//   R2 = prod_j Ry^{(j)}[pi/2] Rz^{(j)}[-phi_j],
//   phi_j = (2 pi m / N)(j - 1).
// m = 0 is the conventional symmetric sequence; for m >= 1 the phases sum to
// zero on the unit circle and R1 prepares a state of zero average collective
// spin. The z rotations cancel in R2 R1, which is the collective pi pulse.
struct PulseSequence {
  int n_spins = 1;
  int phase_index = 0;
  std::vector<Real> phases;
};

// Phase family phi_j = (2 pi m / N)(j - 1) for any integer m.
std::vector<Real> phase_angles(int n_spins, int phase_index);

// Validates 0 <= m <= floor(N/2).
PulseSequence make_sequence(int n_spins, int phase_index);

MatrixC first_pulse_matrix(int n_spins, const std::vector<Real>& phases);
MatrixC second_pulse_matrix(int n_spins, const std::vector<Real>& phases);
MatrixC first_pulse_matrix(const PulseSequence& seq);
MatrixC second_pulse_matrix(const PulseSequence& seq);

// Warns (stderr) when rho is not the ground state; does not fail.
DensityMatrix first_pulse(const DensityMatrix& rho, const PulseSequence& seq);
DensityMatrix second_pulse(const DensityMatrix& rho, const PulseSequence& seq);

}  // namespace ramsey
