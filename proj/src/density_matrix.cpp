#include "ramsey/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "ramsey/errors.hpp"

namespace ramsey {

DensityMatrix ground_state(int n_spins) {
  const Index d = dim_for(n_spins);
  MatrixC rho = MatrixC::Zero(d, d);
  rho(d - 1, d - 1) = 1.0;  // all spins |g>
  return {std::move(rho), n_spins};
}

DensityMatrix pure_state(const VectorC& psi, int n_spins) {
  if (psi.size() != dim_for(n_spins))
    throw std::invalid_argument("pure_state: dimension mismatch");
  const Real norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("pure_state: zero vector");
  const VectorC v = psi / norm;
  return {v * v.adjoint(), n_spins};
}

void validate(const DensityMatrix& state, Real tol) {
  if (state.rho.rows() != state.rho.cols() || state.rho.rows() != dim_for(state.n_spins))
    throw NumericalConsistencyError("density matrix: wrong dimensions");
  const Real herm = (state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol)
    throw NumericalConsistencyError("density matrix: hermiticity violated by " +
                                    std::to_string(herm));
  const Real tr = std::abs(state.rho.trace() - Complex(1.0));
  if (tr > tol)
    throw NumericalConsistencyError("density matrix: trace deviates by " + std::to_string(tr));
}

Real purity(const DensityMatrix& state) {
  return (state.rho * state.rho).trace().real();
}

Real min_eigenvalue(const DensityMatrix& state) {
  Eigen::SelfAdjointEigenSolver<MatrixC> solver(state.rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix apply_unitary(const DensityMatrix& state, const MatrixC& u) {
  if (u.rows() != state.dim() || u.cols() != state.dim())
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  return {u * state.rho * u.adjoint(), state.n_spins};
}

DensityMatrix apply_rotation(const DensityMatrix& state, const Rotation& rotation) {
  if (static_cast<int>(rotation.angles.size()) != state.n_spins)
    throw std::invalid_argument("apply_rotation: one angle per spin required");
  return apply_unitary(state, rotation_matrix(rotation));
}

Complex expectation(const DensityMatrix& state, const SpinOperator& op) {
  if (op.dim() != state.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho op) as an elementwise sum
  return (state.rho.transpose().cwiseProduct(op.matrix)).sum();
}

Real collective_variance(const DensityMatrix& state) {
  const SpinOperator sz = collective_sz(state.n_spins);
  const Real mean = expectation(state, sz).real();
  const SpinOperator sz2{sz.matrix * sz.matrix, "Sz^2", state.n_spins};
  const Real second = expectation(state, sz2).real();
  Real var = second - mean * mean;
  if (var < -1e-10)
    throw NumericalConsistencyError("collective_variance: negative radicand " +
                                    std::to_string(var));
  if (var < 0.0) var = 0.0;
  return std::sqrt(var);
}

}  // namespace ramsey
