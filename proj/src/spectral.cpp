#include "ramsey/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ramsey/dynamics.hpp"
#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

// phase fix: first amplitude above threshold made real positive
void fix_phase(Eigen::Ref<VectorC> v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-9) {
      const Complex phase = v[i] / std::abs(v[i]);
      v /= phase;
      return;
    }
  }
}

bool lexicographic_less(const VectorC& x, const VectorC& y) {
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i].real() != y[i].real()) return x[i].real() < y[i].real();
    if (x[i].imag() != y[i].imag()) return x[i].imag() < y[i].imag();
  }
  return false;
}

}  // namespace

MatrixC decay_functional(const CouplingMatrices& couplings) {
  const int n = couplings.size();
  const Index d = dim_for(n);
  MatrixC g = MatrixC::Zero(d, d);
  std::vector<MatrixC> raise(static_cast<std::size_t>(n)), lower(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    raise[static_cast<std::size_t>(i)] = sigma_plus(n, i + 1).matrix;
    lower[static_cast<std::size_t>(i)] = sigma_minus(n, i + 1).matrix;
  }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (couplings.gamma_matrix(k, l) != 0.0)
        g += couplings.gamma_matrix(k, l) *
             (raise[static_cast<std::size_t>(k)] * lower[static_cast<std::size_t>(l)]);
  return g;
}

SpectralDecomposition decompose(const CouplingMatrices& couplings, Real detuning) {
  validate(couplings);
  const int n = couplings.size();
  const Index d = dim_for(n);

  const LindbladGenerator generator(couplings, detuning);
  const MatrixC h = generator.hamiltonian();
  const MatrixC g = decay_functional(couplings);

  SpectralDecomposition out;
  out.eigenstates = MatrixC::Zero(d, d);
  out.decay_rates = VectorR::Zero(d);
  out.energies = VectorR::Zero(d);
  out.excitation.resize(static_cast<std::size_t>(d));

  const Real commutator = (h * g - g * h).cwiseAbs().maxCoeff();
  const Real scale = std::max({h.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff(), Real(1.0)});
  out.simultaneous = commutator < 1e-9 * scale;

  // Both H and the decay functional conserve excitation number: work sector
  // by sector, and diagonalise the decay functional inside each degenerate
  // energy block.
  Index column = 0;
  for (int sector = 0; sector <= n; ++sector) {
    std::vector<Index> members;
    for (Index b = 0; b < d; ++b)
      if (excitation_number(b, n) == sector) members.push_back(b);
    const Index m = static_cast<Index>(members.size());
    MatrixC h_sector(m, m), g_sector(m, m);
    for (Index col = 0; col < m; ++col)
      for (Index row = 0; row < m; ++row) {
        h_sector(row, col) = h(members[static_cast<std::size_t>(row)],
                               members[static_cast<std::size_t>(col)]);
        g_sector(row, col) = g(members[static_cast<std::size_t>(row)],
                               members[static_cast<std::size_t>(col)]);
      }
    Eigen::SelfAdjointEigenSolver<MatrixC> h_solver(h_sector);
    const VectorR energies = h_solver.eigenvalues();
    const MatrixC basis = h_solver.eigenvectors();
    const Real energy_tol = 1e-9 * std::max(energies.cwiseAbs().maxCoeff(), Real(1.0));

    Index start = 0;
    while (start < m) {
      Index stop = start + 1;
      while (stop < m && energies[stop] - energies[start] < energy_tol) ++stop;
      const Index width = stop - start;
      const MatrixC block_basis = basis.middleCols(start, width);
      const MatrixC g_block = block_basis.adjoint() * g_sector * block_basis;
      Eigen::SelfAdjointEigenSolver<MatrixC> g_solver(g_block);
      const MatrixC rotated = block_basis * g_solver.eigenvectors();
      for (Index t = 0; t < width; ++t) {
        VectorC state = VectorC::Zero(d);
        for (Index row = 0; row < m; ++row)
          state[members[static_cast<std::size_t>(row)]] = rotated(row, t);
        fix_phase(state);
        out.eigenstates.col(column) = state;
        out.decay_rates[column] = g_solver.eigenvalues()[t];
        out.energies[column] = energies[start];
        out.excitation[static_cast<std::size_t>(column)] = sector;
        ++column;
      }
      start = stop;
    }
  }

  out.sort_order.resize(static_cast<std::size_t>(d));
  std::iota(out.sort_order.begin(), out.sort_order.end(), 0);
  const Real rate_tol = 1e-9 * std::max(out.decay_rates.cwiseAbs().maxCoeff(), Real(1.0));
  std::sort(out.sort_order.begin(), out.sort_order.end(), [&](int lhs, int rhs) {
    const Real dl = out.decay_rates[lhs], dr = out.decay_rates[rhs];
    if (std::abs(dl - dr) > rate_tol) return dl < dr;
    const int el = out.excitation[static_cast<std::size_t>(lhs)];
    const int er = out.excitation[static_cast<std::size_t>(rhs)];
    if (el != er) return el < er;
    return lexicographic_less(out.eigenstates.col(lhs), out.eigenstates.col(rhs));
  });
  return out;
}

VectorR population_histogram(const SpectralDecomposition& decomposition,
                             const DensityMatrix& state) {
  if (state.dim() != decomposition.eigenstates.rows())
    throw std::invalid_argument("population_histogram: dimension mismatch");
  const Index d = state.dim();
  VectorR weights(d);
  for (Index j = 0; j < d; ++j) {
    const VectorC phi = decomposition.eigenstates.col(j);
    weights[j] = (phi.adjoint() * state.rho * phi)(0, 0).real();
  }
  const Real total = weights.sum();
  if (std::abs(total - 1.0) > 1e-10)
    throw NumericalConsistencyError("population_histogram: weights sum to " +
                                    std::to_string(total));
  return weights;
}

Real mean_decay_rate(const SpectralDecomposition& decomposition, const VectorR& weights) {
  if (weights.size() != decomposition.decay_rates.size())
    throw std::invalid_argument("mean_decay_rate: size mismatch");
  return decomposition.decay_rates.dot(weights);
}

}  // namespace ramsey
