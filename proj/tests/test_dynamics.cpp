#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "ramsey/dynamics.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/pulses.hpp"

using namespace ramsey;

namespace {

constexpr Real kPi = 3.14159265358979323846;

DensityMatrix excited_state(int n) {
  const Index d = dim_for(n);
  MatrixC rho = MatrixC::Zero(d, d);
  rho(0, 0) = 1.0;
  return {std::move(rho), n};
}

CouplingMatrices random_couplings(oracles::Rng& rng, int n) {
  const Real spacing = rng.uniform(0.12, 1.2);
  return coupling_matrices(build_chain(n, spacing));
}

}  // namespace

TEST_CASE("single atom decays exponentially") {
  const LindbladGenerator generator(independent_atoms(1), 0.0);
  for (const Method method : {Method::spectral, Method::expm, Method::rk45}) {
    IntegratorOptions options;
    options.method = method;
    const DensityMatrix evolved = evolve(generator, excited_state(1), 1.0, options);
    CHECK(evolved.rho(0, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    CHECK(evolved.rho(1, 1).real() == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-6));
  }
}

TEST_CASE("evolve at tau = 0 returns the input exactly") {
  const LindbladGenerator generator(independent_atoms(2), 0.7);
  oracles::Rng rng(3);
  const DensityMatrix rho{rng.density_matrix(4), 2};
  const DensityMatrix out = evolve(generator, rho, 0.0);
  CHECK((out.rho - rho.rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator annihilates the trace on random states") {
  oracles::Rng rng(5);
  for (int cases = 0; cases < 20; ++cases) {
    const int n = rng.uniform_int(1, 3);
    const LindbladGenerator generator(random_couplings(rng, n), rng.uniform(-1.0, 1.0));
    const MatrixC sup = generator.liouvillian_matrix();
    MatrixC rho = rng.hermitian(dim_for(n));
    const Eigen::Map<const VectorC> vec(rho.data(), rho.size());
    const VectorC dot = sup * vec;
    const Eigen::Map<const MatrixC> dot_mat(dot.data(), rho.rows(), rho.cols());
    CHECK(std::abs(dot_mat.trace()) < 1e-10 * rho.cwiseAbs().maxCoeff() * rho.rows());
  }
}

TEST_CASE("closed system evolution preserves purity") {
  // gamma -> 0 limit realised by scaling all rates down to numerical zero is
  // not representable (gamma > 0 required), so check unitarity through the
  // commutator route: detuning-only generator with zero cross couplings has
  // purity-preserving coherent part plus decay; instead verify that with
  // dissipation removed from the superoperator the evolution is unitary.
  const CouplingMatrices couplings = coupling_matrices(build_chain(2, 0.3));
  const LindbladGenerator generator(couplings, 0.4);
  // Hamiltonian-only superoperator
  const MatrixC h = generator.hamiltonian();
  const Index d = h.rows();
  const MatrixC id = MatrixC::Identity(d, d);
  MatrixC sup = MatrixC::Zero(d * d, d * d);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < d; ++r)
      for (Index k = 0; k < d; ++k) {
        // i (rho H - H rho)
        sup(r + d * c, r + d * k) += Complex(0, 1) * h(k, c);
        sup(r + d * c, k + d * c) -= Complex(0, 1) * h(r, k);
      }
  oracles::Rng rng(9);
  MatrixC rho = rng.density_matrix(d);
  const Eigen::Map<const VectorC> vec(rho.data(), rho.size());
  const MatrixC propagated = (sup * 1.3).exp() * vec;
  const Eigen::Map<const MatrixC> evolved(propagated.data(), d, d);
  CHECK(std::abs((evolved * evolved).trace().real() - (rho * rho).trace().real()) < 1e-9);
}

TEST_CASE("two-atom channel rates") {
  const CouplingMatrices couplings = coupling_matrices(build_chain(2, 0.3));
  Eigen::SelfAdjointEigenSolver<MatrixR> solver(couplings.gamma_matrix);
  const Real cross = couplings.gamma_matrix(0, 1);
  CHECK(solver.eigenvalues()[0] == doctest::Approx(1.0 - cross).epsilon(1e-14));
  CHECK(solver.eigenvalues()[1] == doctest::Approx(1.0 + cross).epsilon(1e-14));
  CHECK(solver.eigenvalues()[0] == doctest::Approx(0.58663863639).epsilon(1e-9));
}

TEST_CASE("Dicke pair: symmetric state superradiant, antisymmetric state dark") {
  const LindbladGenerator generator(dicke_limit(2), 0.0);
  VectorC s(4), a(4);
  s << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  a << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  const Real tau = 0.7;
  const DensityMatrix s_out = evolve(generator, pure_state(s, 2), tau);
  const DensityMatrix a_out = evolve(generator, pure_state(a, 2), tau);
  const Real s_population = (s.adjoint() * s_out.rho * s).real().value();
  const Real a_population = (a.adjoint() * a_out.rho * a).real().value();
  CHECK(s_population == doctest::Approx(std::exp(-2.0 * tau)).epsilon(1e-10));
  CHECK(a_population == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric coherence decays at gamma_S/2 and rotates at omega + Omega") {
  const CouplingMatrices couplings = coupling_matrices(build_chain(2, 0.3));
  const Real omega = 0.9;
  const Real gamma_s = 1.0 + couplings.gamma_matrix(0, 1);
  const Real shift = couplings.omega_matrix(0, 1);
  const LindbladGenerator generator(couplings, omega);
  VectorC s(4), g(4);
  s << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  g << 0, 0, 0, 1;
  // state with an SG coherence
  const VectorC psi = (s + g) / std::sqrt(2.0);
  const Real tau = 0.8;
  const DensityMatrix out = evolve(generator, pure_state(psi, 2), tau);
  const Complex sg = (s.adjoint() * out.rho * g).value();
  const Complex expected =
      0.5 * std::exp(Complex(-gamma_s / 2.0, -(omega + shift)) * tau);
  CHECK(std::abs(sg - expected) < 1e-10);
}

TEST_CASE("propagation methods agree") {
  oracles::Rng rng(21);
  for (int cases = 0; cases < 5; ++cases) {
    const int n = rng.uniform_int(2, 3);
    const CouplingMatrices couplings = random_couplings(rng, n);
    const Real omega = rng.uniform(-1.0, 1.0);
    const Real tau = rng.uniform(0.1, 2.0);
    const LindbladGenerator generator(couplings, omega);
    const DensityMatrix rho{rng.density_matrix(dim_for(n)), n};
    IntegratorOptions spectral, expm, rk;
    spectral.method = Method::spectral;
    expm.method = Method::expm;
    rk.method = Method::rk45;
    const DensityMatrix a = evolve(generator, rho, tau, spectral);
    const DensityMatrix b = evolve(generator, rho, tau, expm);
    const DensityMatrix c = evolve(generator, rho, tau, rk);
    CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.rho - c.rho).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("trace, hermiticity and positivity are preserved") {
  oracles::Rng rng(23);
  for (int cases = 0; cases < 30; ++cases) {
    const int n = rng.uniform_int(1, 4);
    const LindbladGenerator generator(random_couplings(rng, n), rng.uniform(-2.0, 2.0));
    const DensityMatrix rho{rng.density_matrix(dim_for(n)), n};
    const DensityMatrix out = evolve(generator, rho, rng.uniform(0.0, 10.0));
    CHECK(std::abs(out.rho.trace() - Complex(1.0)) < 1e-8);
    CHECK((out.rho - out.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(min_eigenvalue(out) > -1e-8);
  }
}

TEST_CASE("semigroup property") {
  oracles::Rng rng(25);
  for (int cases = 0; cases < 10; ++cases) {
    const int n = rng.uniform_int(1, 3);
    const LindbladGenerator generator(random_couplings(rng, n), rng.uniform(-1.0, 1.0));
    const DensityMatrix rho{rng.density_matrix(dim_for(n)), n};
    const Real tau1 = rng.uniform(0.05, 2.0), tau2 = rng.uniform(0.05, 2.0);
    const DensityMatrix direct = evolve(generator, rho, tau1 + tau2);
    const DensityMatrix stepped = evolve(generator, evolve(generator, rho, tau1), tau2);
    CHECK((direct.rho - stepped.rho).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("zero cross coupling factorises into single-atom evolutions") {
  oracles::Rng rng(27);
  const int n = 3;
  const LindbladGenerator generator(independent_atoms(n), 0.6);
  const LindbladGenerator single(independent_atoms(1), 0.6);
  // product of single-spin pure states
  std::vector<VectorC> factors;
  VectorC psi = VectorC::Ones(1);
  for (int j = 0; j < n; ++j) {
    factors.push_back(rng.pure_state(2));
    VectorC next(psi.size() * 2);
    for (Index a = 0; a < psi.size(); ++a)
      for (Index b = 0; b < 2; ++b) next[2 * a + b] = psi[a] * factors.back()[b];
    psi = next;
  }
  const Real tau = 1.1;
  const DensityMatrix joint = evolve(generator, pure_state(psi, n), tau);
  MatrixC product = MatrixC::Ones(1, 1);
  for (int j = 0; j < n; ++j) {
    const DensityMatrix part = evolve(single, pure_state(factors[j], 1), tau);
    MatrixC next(product.rows() * 2, product.cols() * 2);
    for (Index a = 0; a < product.rows(); ++a)
      for (Index b = 0; b < product.cols(); ++b)
        next.block(2 * a, 2 * b, 2, 2) = product(a, b) * part.rho;
    product = next;
  }
  CHECK((joint.rho - product).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("detuning enters exactly as the frame rotation") {
  oracles::Rng rng(29);
  const CouplingMatrices couplings = coupling_matrices(build_chain(3, 0.25));
  const Real omega = 1.7, tau = 0.9;
  const LindbladGenerator generator(couplings, omega);
  const DensityMatrix rho{rng.density_matrix(8), 3};
  IntegratorOptions spectral, expm;
  spectral.method = Method::spectral;  // rotating-frame split
  expm.method = Method::expm;          // dense exponential of the full generator
  const DensityMatrix a = evolve(generator, rho, tau, spectral);
  const DensityMatrix b = evolve(generator, rho, tau, expm);
  CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("evolve_batch matches individual evolve calls") {
  oracles::Rng rng(31);
  const CouplingMatrices couplings = coupling_matrices(build_chain(2, 0.4));
  const DensityMatrix rho{rng.density_matrix(4), 2};
  const std::vector<Real> omegas = {0.0, 0.5, 1.5};
  const std::vector<Real> taus = {0.0, 0.3, 1.2};
  const EvolutionTable table = evolve_batch(couplings, omegas, rho, taus);
  REQUIRE(table.states.size() == 9);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const LindbladGenerator generator(couplings, omegas[i]);
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const DensityMatrix direct = evolve(generator, rho, taus[j]);
      CHECK((table.at(i, j).rho - direct.rho).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  // tau = 0 column is the input state
  for (std::size_t i = 0; i < omegas.size(); ++i)
    CHECK((table.at(i, 0).rho - rho.rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("single-atom batch sweeps give the Ramsey phases") {
  const CouplingMatrices couplings = independent_atoms(1);
  const DensityMatrix plus = first_pulse(ground_state(1), make_sequence(1, 0));
  const std::vector<Real> omegas = {0.4, 1.1, 2.3};
  const Real tau = 1.3;
  const EvolutionTable table = evolve_batch(couplings, omegas, plus, {tau});
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const Complex coherence = table.at(i, 0).rho(0, 1);
    const Complex expected =
        0.5 * std::exp(Complex(-0.5, 0.0) * tau) * std::exp(Complex(0.0, -omegas[i] * tau));
    CHECK(std::abs(coherence - expected) < 1e-12);
  }
}

TEST_CASE("1x1 batch equals single evolve") {
  const CouplingMatrices couplings = independent_atoms(2);
  const DensityMatrix rho = ground_state(2);
  const EvolutionTable table = evolve_batch(couplings, {0.3}, rho, {0.7});
  const DensityMatrix direct = evolve(LindbladGenerator(couplings, 0.3), rho, 0.7);
  CHECK((table.at(0, 0).rho - direct.rho).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("empty batch grids are rejected") {
  const CouplingMatrices couplings = independent_atoms(1);
  CHECK_THROWS_AS(evolve_batch(couplings, {}, ground_state(1), {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evolve_batch(couplings, {0.0}, ground_state(1), {}),
                  std::invalid_argument);
}

TEST_CASE("negative tau is rejected") {
  const LindbladGenerator generator(independent_atoms(1), 0.0);
  CHECK_THROWS_AS(evolve(generator, ground_state(1), -0.1), std::invalid_argument);
}

TEST_CASE("propagator blocks are all spectral for typical couplings") {
  CHECK(Propagator(coupling_matrices(build_chain(4, 0.3))).fully_spectral());
  CHECK(Propagator(independent_atoms(3)).fully_spectral());
}

TEST_CASE("seven spins fall back to direct integration") {
  // beyond six spins the vectorised generator is not materialised
  const LindbladGenerator generator(independent_atoms(7), 0.0);
  CHECK_THROWS_AS(Propagator(independent_atoms(7)), std::invalid_argument);
  const Real tau = 0.2;
  const DensityMatrix evolved = evolve(generator, excited_state(7), tau);
  CHECK(evolved.rho(0, 0).real() == doctest::Approx(std::exp(-7.0 * tau)).epsilon(1e-7));
  CHECK(std::abs(evolved.rho.trace() - Complex(1.0)) < 1e-9);
}
