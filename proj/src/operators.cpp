#include "ramsey/operators.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace ramsey {

namespace {

void check_spin_count(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins)
    throw std::invalid_argument("operators: spin count must be in [1, 8]");
}

void check_spin_index(int n_spins, int spin) {
  check_spin_count(n_spins);
  if (spin < 1 || spin > n_spins)
    throw std::invalid_argument("operators: spin index out of range");
}

Eigen::Matrix2cd pauli(Axis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case Axis::x: m << 0, 1, 1, 0; break;
    case Axis::y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Axis::z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// op on the given spin, identity elsewhere; spin 1 is the leftmost factor.
MatrixC embed(const Eigen::Matrix2cd& op, int n_spins, int spin) {
  MatrixC m = MatrixC::Identity(1, 1);
  for (int j = 1; j <= n_spins; ++j) {
    const MatrixC factor = (j == spin) ? MatrixC(op) : MatrixC(MatrixC::Identity(2, 2));
    m = Eigen::kroneckerProduct(m, factor).eval();
  }
  return m;
}

}  // namespace

Index dim_for(int n_spins) {
  check_spin_count(n_spins);
  return Index(1) << n_spins;
}

int excitation_number(Index basis_index, int n_spins) {
  // bit 0 encodes |e>, so excited spins are the zero bits
  int n = 0;
  for (int s = 0; s < n_spins; ++s)
    if (((basis_index >> (n_spins - 1 - s)) & 1) == 0) ++n;
  return n;
}

SpinOperator sigma_plus(int n_spins, int spin) {
  check_spin_index(n_spins, spin);
  Eigen::Matrix2cd sp;
  sp << 0, 1, 0, 0;  // |e><g|
  return {embed(sp, n_spins, spin), "sigma+_" + std::to_string(spin), n_spins};
}

SpinOperator sigma_minus(int n_spins, int spin) {
  check_spin_index(n_spins, spin);
  Eigen::Matrix2cd sm;
  sm << 0, 0, 1, 0;
  return {embed(sm, n_spins, spin), "sigma-_" + std::to_string(spin), n_spins};
}

SpinOperator sigma_x(int n_spins, int spin) {
  check_spin_index(n_spins, spin);
  return {embed(pauli(Axis::x), n_spins, spin), "sigmax_" + std::to_string(spin), n_spins};
}

SpinOperator sigma_y(int n_spins, int spin) {
  check_spin_index(n_spins, spin);
  return {embed(pauli(Axis::y), n_spins, spin), "sigmay_" + std::to_string(spin), n_spins};
}

SpinOperator sigma_z(int n_spins, int spin) {
  check_spin_index(n_spins, spin);
  return {embed(pauli(Axis::z), n_spins, spin), "sigmaz_" + std::to_string(spin), n_spins};
}

SpinOperator collective_sz(int n_spins) {
  const Index d = dim_for(n_spins);
  MatrixC m = MatrixC::Zero(d, d);
  m.diagonal() = (0.5 * sigma_z_sum_diagonal(n_spins)).cast<Complex>();
  return {std::move(m), "Sz", n_spins};
}

SpinOperator collective_raising(int n_spins) {
  const Index d = dim_for(n_spins);
  MatrixC m = MatrixC::Zero(d, d);
  for (int i = 1; i <= n_spins; ++i) m += sigma_plus(n_spins, i).matrix;
  return {std::move(m), "S+", n_spins};
}

VectorR sigma_z_sum_diagonal(int n_spins) {
  const Index d = dim_for(n_spins);
  VectorR z(d);
  for (Index b = 0; b < d; ++b)
    z[b] = 2.0 * excitation_number(b, n_spins) - n_spins;
  return z;
}

Rotation uniform_rotation(int n_spins, Axis axis, Real angle) {
  check_spin_count(n_spins);
  return {axis, std::vector<Real>(static_cast<std::size_t>(n_spins), angle)};
}

MatrixC rotation_matrix(const Rotation& rotation) {
  const int n = static_cast<int>(rotation.angles.size());
  check_spin_count(n);
  const Eigen::Matrix2cd sigma = pauli(rotation.axis);
  MatrixC u = MatrixC::Identity(1, 1);
  for (int j = 0; j < n; ++j) {
    const Real phi = rotation.angles[static_cast<std::size_t>(j)];
    // exp(i phi sigma / 2) = cos(phi/2) + i sin(phi/2) sigma
    const Eigen::Matrix2cd factor = std::cos(phi / 2) * Eigen::Matrix2cd::Identity() +
                                    kI * std::sin(phi / 2) * sigma;
    u = Eigen::kroneckerProduct(u, factor).eval();
  }
  return u;
}

}  // namespace ramsey
