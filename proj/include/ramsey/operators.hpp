#pragma once

#include <string>
#include <vector>

#include "ramsey/types.hpp"

namespace ramsey {

// Tensor-product convention: spin 1 is the most significant qubit and |e>
// precedes |g>, so the all-excited state is basis index 0 and the all-ground
// state is the last index.

Index dim_for(int n_spins);

// Number of excited spins in a basis state.
int excitation_number(Index basis_index, int n_spins);

struct SpinOperator {
  MatrixC matrix;
  std::string label;
  int n_spins = 0;

  Index dim() const { return matrix.rows(); }
};

SpinOperator sigma_plus(int n_spins, int spin);
SpinOperator sigma_minus(int n_spins, int spin);
SpinOperator sigma_x(int n_spins, int spin);
SpinOperator sigma_y(int n_spins, int spin);
SpinOperator sigma_z(int n_spins, int spin);

// S^z = sum_i sigma_i^z / 2, eigenvalues -N/2 ... +N/2.
SpinOperator collective_sz(int n_spins);
SpinOperator collective_raising(int n_spins);  // S^+ = sum_i sigma_i^+

// Diagonal of sum_i sigma_i^z; fixed by the basis convention.
VectorR sigma_z_sum_diagonal(int n_spins);

enum class Axis { x, y, z };

// Per-spin rotation set; induces U = prod_j exp(i phi_j sigma_j^mu / 2).
struct Rotation {
  Axis axis = Axis::y;
  std::vector<Real> angles;
};

Rotation uniform_rotation(int n_spins, Axis axis, Real angle);
MatrixC rotation_matrix(const Rotation& rotation);

}  // namespace ramsey
