#pragma once

#include <vector>

#include "ramsey/types.hpp"

namespace ramsey {

// A collection of identical two-level emitters: positions in units of the
// transition wavelength lambda0, one common dipole orientation and the
// single-atom decay rate Gamma (the global rate unit).
struct EmitterEnsemble {
  std::vector<Vector3> positions;
  Vector3 dipole = Vector3::UnitZ();
  Real gamma = 1.0;
  Real lambda0 = 1.0;
  bool dicke_flag = false;  // permits coincident positions in the geometry

  int size() const { return static_cast<int>(positions.size()); }
};

// Pairwise couplings to the shared vacuum. gamma_matrix holds the mutual
// decay rates with Gamma_ii = Gamma on the diagonal; omega_matrix holds the
// coherent dipole-dipole shifts with zero diagonal. Both are symmetric.
struct CouplingMatrices {
  MatrixR gamma_matrix;
  MatrixR omega_matrix;
  Real gamma = 1.0;

  int size() const { return static_cast<int>(gamma_matrix.rows()); }
};

// Free-space dipole-dipole kernels for separation r (units of lambda0) and
// cos(theta) between the dipole orientation and the separation axis. At
// theta = pi/2, r = 0.3 these give 0.4134 Gamma and 0.2891 Gamma.
Real decay_kernel(Real r, Real cos_theta, Real gamma = 1.0);
Real shift_kernel(Real r, Real cos_theta, Real gamma = 1.0);

EmitterEnsemble make_ensemble(std::vector<Vector3> positions, const Vector3& dipole,
                              Real gamma = 1.0, bool dicke_flag = false);

// Linear chain along z with the dipole perpendicular to the chain axis.
EmitterEnsemble build_chain(int n, Real spacing, Real gamma = 1.0);

// Four emitters on the corners of a square in the xy plane, labelled around
// the perimeter, dipoles perpendicular to the plane.
EmitterEnsemble build_square(Real spacing, Real gamma = 1.0);

CouplingMatrices coupling_matrices(const EmitterEnsemble& ensemble);

// Equal mutual couplings: gamma_matrix is Gamma everywhere, omega_matrix is
// omega_d off the diagonal.
CouplingMatrices dicke_limit(int n, Real gamma = 1.0, Real omega_d = 0.0);

// No cross couplings at all; the reference case of independent atoms.
CouplingMatrices independent_atoms(int n, Real gamma = 1.0);

// Symmetry, diagonal convention and |Gamma_ij| <= Gamma bound.
void validate(const CouplingMatrices& couplings);

}  // namespace ramsey
