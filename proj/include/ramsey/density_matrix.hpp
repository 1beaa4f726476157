#pragma once

#include "ramsey/operators.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// Trace-one Hermitian state of the full ensemble.
struct DensityMatrix {
  MatrixC rho;
  int n_spins = 0;

  Index dim() const { return rho.rows(); }
};

DensityMatrix ground_state(int n_spins);
DensityMatrix pure_state(const VectorC& psi, int n_spins);

// Hermiticity and unit trace within tol; throws NumericalConsistencyError.
void validate(const DensityMatrix& state, Real tol = kConstructionTol);

Real purity(const DensityMatrix& state);

// Smallest eigenvalue; positivity diagnostic for test paths.
Real min_eigenvalue(const DensityMatrix& state);

DensityMatrix apply_unitary(const DensityMatrix& state, const MatrixC& u);
DensityMatrix apply_rotation(const DensityMatrix& state, const Rotation& rotation);

Complex expectation(const DensityMatrix& state, const SpinOperator& op);

// sqrt(<Sz^2> - <Sz>^2); tiny negative radicands are clamped, larger ones
// raise NumericalConsistencyError.
Real collective_variance(const DensityMatrix& state);

}  // namespace ramsey
