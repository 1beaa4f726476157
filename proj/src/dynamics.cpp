#include "ramsey/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

// Largest system propagated through the dense vectorised generator; beyond
// this the adaptive integrator works on the density matrix directly.
constexpr int kMaxSuperopSpins = 6;

MatrixC hamiltonian_matrix(const CouplingMatrices& couplings, Real detuning) {
  const int n = couplings.size();
  const Index d = dim_for(n);
  MatrixC h = MatrixC::Zero(d, d);
  h.diagonal() = (0.5 * detuning * sigma_z_sum_diagonal(n)).cast<Complex>();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && couplings.omega_matrix(i - 1, j - 1) != 0.0)
        h += couplings.omega_matrix(i - 1, j - 1) *
             (sigma_plus(n, i).matrix * sigma_minus(n, j).matrix);
  return h;
}

// rho(tau) via adaptive Dormand-Prince on drho/dt = i[rho,H] - {K,rho} + feed,
// K = (1/2) sum_ij Gamma_ij s_i^+ s_j^-.
MatrixC integrate_rk45(const CouplingMatrices& couplings, Real detuning, MatrixC rho,
                       Real tau, Real rtol, Real atol) {
  const int n = couplings.size();
  const MatrixC h = hamiltonian_matrix(couplings, detuning);
  std::vector<MatrixC> lower(n), raise(n);
  for (int i = 0; i < n; ++i) {
    lower[i] = sigma_minus(n, i + 1).matrix;
    raise[i] = sigma_plus(n, i + 1).matrix;
  }
  MatrixC k_op = MatrixC::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (couplings.gamma_matrix(i, j) != 0.0)
        k_op += 0.5 * couplings.gamma_matrix(i, j) * (raise[i] * lower[j]);

  const auto rhs = [&](const MatrixC& r) -> MatrixC {
    MatrixC d = kI * (r * h - h * r) - (k_op * r + r * k_op);
    for (int j = 0; j < n; ++j) {
      MatrixC feed = MatrixC::Zero(r.rows(), r.cols());
      for (int i = 0; i < n; ++i)
        if (couplings.gamma_matrix(i, j) != 0.0)
          feed += couplings.gamma_matrix(i, j) * (lower[i] * r);
      d += feed * raise[j];
    }
    return d;
  };

  // Dormand-Prince 5(4) coefficients (autonomous right-hand side)
  static const Real a21 = 1.0 / 5;
  static const Real a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const Real a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const Real a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                    a54 = -212.0 / 729;
  static const Real a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                    a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const Real b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                    b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const Real e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                    e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Real t = 0.0;
  Real rate_scale = couplings.gamma_matrix.cwiseAbs().maxCoeff() * n + std::abs(detuning) + 1.0;
  Real step = std::min(tau, 0.1 / rate_scale);
  MatrixC k1 = rhs(rho);
  long iterations = 0;
  while (t < tau) {
    if (++iterations > 2000000)
      throw EvolutionDivergedError("rk45: step limit exceeded at t = " + std::to_string(t));
    step = std::min(step, tau - t);
    const MatrixC k2 = rhs(rho + step * (a21 * k1));
    const MatrixC k3 = rhs(rho + step * (a31 * k1 + a32 * k2));
    const MatrixC k4 = rhs(rho + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const MatrixC k5 = rhs(rho + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const MatrixC k6 = rhs(rho + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const MatrixC next = rho + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const MatrixC k7 = rhs(next);
    const MatrixC err_mat =
        step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const Real scale = atol + rtol * std::max(rho.cwiseAbs().maxCoeff(),
                                              next.cwiseAbs().maxCoeff());
    const Real err = err_mat.cwiseAbs().maxCoeff() / scale;
    if (err <= 1.0) {
      t += step;
      rho = next;
      k1 = k7;  // FSAL
    }
    const Real factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    step *= std::clamp(factor, 0.2, 5.0);
  }
  return rho;
}

}  // namespace

MatrixC liouvillian_matrix(const CouplingMatrices& couplings, Real detuning) {
  const int n = couplings.size();
  const Index d = dim_for(n);
  const MatrixC h = hamiltonian_matrix(couplings, detuning);
  const MatrixC id = MatrixC::Identity(d, d);
  // vec(rho) column-stacked: vec(A rho B) = (B^T (x) A) vec(rho)
  MatrixC sup = kI * (Eigen::kroneckerProduct(h.transpose(), id) -
                      Eigen::kroneckerProduct(id, h));
  for (int i = 1; i <= n; ++i) {
    const MatrixC lower_i = sigma_minus(n, i).matrix;
    for (int j = 1; j <= n; ++j) {
      const Real g = couplings.gamma_matrix(i - 1, j - 1);
      if (g == 0.0) continue;
      const MatrixC raise_j = sigma_plus(n, j).matrix;
      const MatrixC updown = sigma_plus(n, i).matrix * sigma_minus(n, j).matrix;
      sup += g * (Eigen::kroneckerProduct(raise_j.transpose(), lower_i) -
                  0.5 * Eigen::kroneckerProduct(id, updown) -
                  0.5 * Eigen::kroneckerProduct(updown.transpose(), id));
    }
  }
  return sup;
}

Propagator::Propagator(const CouplingMatrices& couplings) {
  validate(couplings);
  n_spins_ = couplings.size();
  if (n_spins_ > kMaxSuperopSpins)
    throw std::invalid_argument("Propagator: dense superoperator limited to 6 spins");
  dim_ = dim_for(n_spins_);
  z_diag_ = sigma_z_sum_diagonal(n_spins_);

  const MatrixC sup = liouvillian_matrix(couplings, 0.0);

  // Group vec indices v = a + dim*b by the bra-ket excitation difference; the
  // generator never mixes the groups.
  std::vector<int> key(static_cast<std::size_t>(dim_ * dim_));
  blocks_.assign(static_cast<std::size_t>(2 * n_spins_ + 1), Block{});
  for (Index b = 0; b < dim_; ++b)
    for (Index a = 0; a < dim_; ++a) {
      const int k = excitation_number(a, n_spins_) - excitation_number(b, n_spins_);
      const std::size_t slot = static_cast<std::size_t>(k + n_spins_);
      key[static_cast<std::size_t>(a + dim_ * b)] = static_cast<int>(slot);
      blocks_[slot].indices.push_back(a + dim_ * b);
    }

  for (auto& block : blocks_) {
    const Index m = static_cast<Index>(block.indices.size());
    block.matrix.resize(m, m);
    for (Index col = 0; col < m; ++col)
      for (Index row = 0; row < m; ++row)
        block.matrix(row, col) = sup(block.indices[static_cast<std::size_t>(row)],
                                     block.indices[static_cast<std::size_t>(col)]);
    Eigen::ComplexEigenSolver<MatrixC> solver(block.matrix);
    if (solver.info() == Eigen::Success) {
      block.eigenvalues = solver.eigenvalues();
      block.vectors = solver.eigenvectors();
      Eigen::FullPivLU<MatrixC> lu(block.vectors);
      if (lu.isInvertible()) {
        block.vectors_inverse = lu.inverse();
        const Real residual =
            (block.vectors * block.eigenvalues.asDiagonal() * block.vectors_inverse -
             block.matrix)
                .cwiseAbs()
                .maxCoeff();
        const Real scale = std::max(block.matrix.cwiseAbs().maxCoeff(), Real(1.0));
        block.spectral_ok = residual < 1e-9 * scale;
      }
    }
  }

  // structural invariant: no coupling between groups
  for (Index col = 0; col < dim_ * dim_; ++col)
    for (Index row = 0; row < dim_ * dim_; ++row)
      if (key[static_cast<std::size_t>(row)] != key[static_cast<std::size_t>(col)] &&
          sup(row, col) != Complex(0.0))
        throw NumericalConsistencyError("Propagator: generator mixes excitation sectors");
}

bool Propagator::fully_spectral() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const Block& b) { return b.spectral_ok; });
}

MatrixC Propagator::apply_core(const MatrixC& rho, Real tau) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw std::invalid_argument("Propagator: dimension mismatch");
  if (tau < 0.0) throw std::invalid_argument("Propagator: tau must be non-negative");
  if (tau == 0.0) return rho;
  const Eigen::Map<const VectorC> vec(rho.data(), dim_ * dim_);
  MatrixC out(dim_, dim_);
  Eigen::Map<VectorC> out_vec(out.data(), dim_ * dim_);
  for (const auto& block : blocks_) {
    const Index m = static_cast<Index>(block.indices.size());
    VectorC x(m);
    for (Index r = 0; r < m; ++r) x[r] = vec[block.indices[static_cast<std::size_t>(r)]];
    VectorC y;
    if (block.spectral_ok) {
      VectorC c = block.vectors_inverse * x;
      for (Index r = 0; r < m; ++r) c[r] *= std::exp(block.eigenvalues[r] * tau);
      y = block.vectors * c;
    } else {
      y = (block.matrix * tau).exp() * x;
    }
    for (Index r = 0; r < m; ++r) out_vec[block.indices[static_cast<std::size_t>(r)]] = y[r];
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return out;
}

void Propagator::rotate_frame(MatrixC& rho, Real phase) const {
  if (phase == 0.0) return;
  VectorC ph(dim_);
  for (Index a = 0; a < dim_; ++a) ph[a] = std::exp(Complex(0.0, -0.5 * phase * z_diag_[a]));
  rho = (ph.asDiagonal() * rho * ph.conjugate().asDiagonal()).eval();
}

MatrixC Propagator::apply(const MatrixC& rho, Real tau, Real detuning) const {
  MatrixC out = apply_core(rho, tau);
  rotate_frame(out, detuning * tau);
  return out;
}

LindbladGenerator::LindbladGenerator(CouplingMatrices couplings, Real detuning)
    : couplings_(std::move(couplings)), detuning_(detuning) {
  validate(couplings_);
  hamiltonian_ = hamiltonian_matrix(couplings_, detuning_);
}

MatrixC LindbladGenerator::liouvillian_matrix() const {
  return ramsey::liouvillian_matrix(couplings_, detuning_);
}

const Propagator& LindbladGenerator::propagator() const {
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (!propagator_) propagator_ = std::make_shared<const Propagator>(couplings_);
  return *propagator_;
}

LindbladGenerator build_generator(const CouplingMatrices& couplings, Real detuning) {
  return LindbladGenerator(couplings, detuning);
}

DensityMatrix evolve(const LindbladGenerator& generator, const DensityMatrix& rho, Real tau,
                     const IntegratorOptions& options) {
  if (rho.dim() != generator.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  if (tau < 0.0) throw std::invalid_argument("evolve: tau must be non-negative");
  if (tau == 0.0) return rho;

  Method method = options.method;
  if (method == Method::automatic)
    method = generator.n_spins() <= kMaxSuperopSpins ? Method::spectral : Method::rk45;

  MatrixC evolved;
  switch (method) {
    case Method::spectral:
      evolved = generator.propagator().apply(rho.rho, tau, generator.detuning());
      break;
    case Method::expm: {
      const MatrixC sup = generator.liouvillian_matrix();
      const Index d = generator.dim();
      const Eigen::Map<const VectorC> vec(rho.rho.data(), d * d);
      const VectorC out_vec = (sup * tau).exp() * vec;
      evolved = Eigen::Map<const MatrixC>(out_vec.data(), d, d);
      break;
    }
    case Method::rk45:
      evolved = integrate_rk45(generator.couplings(), generator.detuning(), rho.rho, tau,
                               options.rtol, options.atol);
      break;
    case Method::automatic:
      break;
  }

  const Real herm = (evolved - evolved.adjoint()).cwiseAbs().maxCoeff();
  evolved = 0.5 * (evolved + evolved.adjoint()).eval();
  const Real trace_dev = std::abs(evolved.trace() - rho.rho.trace());
  if (herm > kEvolutionTol || trace_dev > kEvolutionTol)
    throw EvolutionDivergedError("evolve: invariants violated (hermiticity " +
                                 std::to_string(herm) + ", trace drift " +
                                 std::to_string(trace_dev) + ")");
  return {std::move(evolved), rho.n_spins};
}

EvolutionTable evolve_batch(const CouplingMatrices& couplings,
                            const std::vector<Real>& detunings, const DensityMatrix& rho0,
                            const std::vector<Real>& taus, const IntegratorOptions& options) {
  if (detunings.empty() || taus.empty())
    throw std::invalid_argument("evolve_batch: grids must be non-empty");
  EvolutionTable table;
  table.detunings = detunings;
  table.taus = taus;
  table.states.reserve(detunings.size() * taus.size());
  const bool shared = (options.method == Method::automatic ||
                       options.method == Method::spectral) &&
                      couplings.size() <= kMaxSuperopSpins;
  if (shared) {
    // one spectral factorisation serves the whole grid; the detuning enters
    // as the exact frame rotation
    const Propagator propagator(couplings);
    for (const Real omega : detunings)
      for (const Real tau : taus) {
        if (tau < 0.0) throw std::invalid_argument("evolve_batch: tau must be non-negative");
        table.states.push_back({propagator.apply(rho0.rho, tau, omega), rho0.n_spins});
      }
  } else {
    for (const Real omega : detunings) {
      const LindbladGenerator generator(couplings, omega);
      for (const Real tau : taus) table.states.push_back(evolve(generator, rho0, tau, options));
    }
  }
  return table;
}

}  // namespace ramsey
