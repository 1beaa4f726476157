#include "ramsey/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {
constexpr Real kPi = 3.14159265358979323846;
constexpr Real kUnitNormTol = 1e-12;
}  // namespace

Real decay_kernel(Real r, Real cos_theta, Real gamma) {
  if (r <= 0.0) throw DegenerateGeometryError("decay_kernel: separation must be positive");
  const Real xi = 2.0 * kPi * r;
  const Real c2 = cos_theta * cos_theta;
  const Real s = std::sin(xi), c = std::cos(xi);
  return 1.5 * gamma *
         ((1.0 - c2) * s / xi + (1.0 - 3.0 * c2) * (c / (xi * xi) - s / (xi * xi * xi)));
}

Real shift_kernel(Real r, Real cos_theta, Real gamma) {
  if (r <= 0.0) throw DegenerateGeometryError("shift_kernel: separation must be positive");
  const Real xi = 2.0 * kPi * r;
  const Real c2 = cos_theta * cos_theta;
  const Real s = std::sin(xi), c = std::cos(xi);
  return 0.75 * gamma *
         (-(1.0 - c2) * c / xi + (1.0 - 3.0 * c2) * (s / (xi * xi) + c / (xi * xi * xi)));
}

EmitterEnsemble make_ensemble(std::vector<Vector3> positions, const Vector3& dipole,
                              Real gamma, bool dicke_flag) {
  if (positions.empty()) throw std::invalid_argument("ensemble: need at least one emitter");
  if (gamma <= 0.0) throw std::invalid_argument("ensemble: gamma must be positive");
  if (std::abs(dipole.norm() - 1.0) > kUnitNormTol)
    throw std::invalid_argument("ensemble: dipole orientation must be a unit vector");
  if (!dicke_flag) {
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        if ((positions[i] - positions[j]).norm() == 0.0)
          throw std::invalid_argument("ensemble: coincident emitters (set the Dicke flag)");
  }
  EmitterEnsemble ensemble;
  ensemble.positions = std::move(positions);
  ensemble.dipole = dipole;
  ensemble.gamma = gamma;
  ensemble.dicke_flag = dicke_flag;
  return ensemble;
}

EmitterEnsemble build_chain(int n, Real spacing, Real gamma) {
  if (n < 1) throw std::invalid_argument("build_chain: n must be >= 1");
  if (spacing <= 0.0) throw std::invalid_argument("build_chain: spacing must be positive");
  std::vector<Vector3> positions;
  positions.reserve(n);
  for (int j = 0; j < n; ++j) positions.emplace_back(0.0, 0.0, j * spacing);
  return make_ensemble(std::move(positions), Vector3::UnitX(), gamma);
}

EmitterEnsemble build_square(Real spacing, Real gamma) {
  if (spacing <= 0.0) throw std::invalid_argument("build_square: spacing must be positive");
  std::vector<Vector3> positions = {{0.0, 0.0, 0.0},
                                    {spacing, 0.0, 0.0},
                                    {spacing, spacing, 0.0},
                                    {0.0, spacing, 0.0}};
  return make_ensemble(std::move(positions), Vector3::UnitZ(), gamma);
}

CouplingMatrices coupling_matrices(const EmitterEnsemble& ensemble) {
  const int n = ensemble.size();
  CouplingMatrices couplings;
  couplings.gamma = ensemble.gamma;
  couplings.gamma_matrix = MatrixR::Zero(n, n);
  couplings.omega_matrix = MatrixR::Zero(n, n);
  couplings.gamma_matrix.diagonal().setConstant(ensemble.gamma);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector3 d = ensemble.positions[j] - ensemble.positions[i];
      const Real r = d.norm() / ensemble.lambda0;
      if (r == 0.0)
        throw DegenerateGeometryError(
            "coupling_matrices: coincident emitters; use dicke_limit instead");
      const Real cos_theta = ensemble.dipole.dot(d / d.norm());
      const Real g = decay_kernel(r, cos_theta, ensemble.gamma);
      const Real o = shift_kernel(r, cos_theta, ensemble.gamma);
      couplings.gamma_matrix(i, j) = couplings.gamma_matrix(j, i) = g;
      couplings.omega_matrix(i, j) = couplings.omega_matrix(j, i) = o;
    }
  }
  return couplings;
}

CouplingMatrices dicke_limit(int n, Real gamma, Real omega_d) {
  if (n < 1) throw std::invalid_argument("dicke_limit: n must be >= 1");
  if (gamma <= 0.0) throw std::invalid_argument("dicke_limit: gamma must be positive");
  CouplingMatrices couplings;
  couplings.gamma = gamma;
  couplings.gamma_matrix = MatrixR::Constant(n, n, gamma);
  couplings.omega_matrix = MatrixR::Constant(n, n, omega_d);
  couplings.omega_matrix.diagonal().setZero();
  return couplings;
}

CouplingMatrices independent_atoms(int n, Real gamma) {
  if (n < 1) throw std::invalid_argument("independent_atoms: n must be >= 1");
  if (gamma <= 0.0) throw std::invalid_argument("independent_atoms: gamma must be positive");
  CouplingMatrices couplings;
  couplings.gamma = gamma;
  couplings.gamma_matrix = gamma * MatrixR::Identity(n, n);
  couplings.omega_matrix = MatrixR::Zero(n, n);
  return couplings;
}

void validate(const CouplingMatrices& couplings) {
  const int n = couplings.size();
  if (n < 1 || couplings.gamma_matrix.cols() != n || couplings.omega_matrix.rows() != n ||
      couplings.omega_matrix.cols() != n)
    throw std::invalid_argument("couplings: matrices must be square and same size");
  const Real scale = std::max(couplings.gamma, Real(1.0));
  if ((couplings.gamma_matrix - couplings.gamma_matrix.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * scale)
    throw std::invalid_argument("couplings: gamma matrix must be symmetric");
  if ((couplings.omega_matrix - couplings.omega_matrix.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * scale)
    throw std::invalid_argument("couplings: omega matrix must be symmetric");
  for (int i = 0; i < n; ++i) {
    if (couplings.gamma_matrix(i, i) != couplings.gamma)
      throw std::invalid_argument("couplings: diagonal must equal the single-atom rate");
    if (couplings.omega_matrix(i, i) != 0.0)
      throw std::invalid_argument("couplings: omega diagonal must vanish");
    for (int j = 0; j < n; ++j)
      if (std::abs(couplings.gamma_matrix(i, j)) > couplings.gamma * (1.0 + 1e-12))
        throw std::invalid_argument("couplings: |gamma_ij| must not exceed gamma");
  }
}

}  // namespace ramsey
