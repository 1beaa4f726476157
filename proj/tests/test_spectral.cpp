#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ramsey/pulses.hpp"
#include "ramsey/spectral.hpp"

using namespace ramsey;

namespace {

VectorR sorted_rates(const SpectralDecomposition& decomposition) {
  VectorR rates = decomposition.decay_rates;
  std::sort(rates.data(), rates.data() + rates.size());
  return rates;
}

}  // namespace

TEST_CASE("two-atom Dicke rates") {
  const SpectralDecomposition decomposition = decompose(dicke_limit(2), 0.0);
  const VectorR rates = sorted_rates(decomposition);
  CHECK(rates[0] == doctest::Approx(0.0).epsilon(1e-12));  // |G>
  CHECK(rates[1] == doctest::Approx(0.0).epsilon(1e-12));  // |A>
  CHECK(rates[2] == doctest::Approx(2.0).epsilon(1e-12));  // |S> or |E>
  CHECK(rates[3] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(decomposition.simultaneous);

  // the |S> projector puts all weight on a rate-2 state
  VectorC s(4);
  s << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  const VectorR weights = population_histogram(decomposition, pure_state(s, 2));
  for (Index j = 0; j < 4; ++j)
    if (weights[j] > 0.5) CHECK(decomposition.decay_rates[j] == doctest::Approx(2.0));
  CHECK(mean_decay_rate(decomposition, weights) == doctest::Approx(2.0));
}

TEST_CASE("general two-atom couplings give the channel rates") {
  const CouplingMatrices couplings = coupling_matrices(build_chain(2, 0.3));
  const Real cross = couplings.gamma_matrix(0, 1);
  const SpectralDecomposition decomposition = decompose(couplings, 0.0);
  const VectorR rates = sorted_rates(decomposition);
  CHECK(rates[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rates[1] == doctest::Approx(1.0 - cross).epsilon(1e-12));
  CHECK(rates[2] == doctest::Approx(1.0 + cross).epsilon(1e-12));
  CHECK(rates[3] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("W state decays at N Gamma in the Dicke limit") {
  const int n = 5;
  const SpectralDecomposition decomposition = decompose(dicke_limit(n), 0.0);
  // W = symmetric single-excitation state
  VectorC w = VectorC::Zero(dim_for(n));
  for (int s = 0; s < n; ++s) {
    const Index idx = (dim_for(n) - 1) ^ (Index(1) << (n - 1 - s));
    w[idx] = 1.0 / std::sqrt(static_cast<Real>(n));
  }
  const VectorR weights = population_histogram(decomposition, pure_state(w, n));
  CHECK(mean_decay_rate(decomposition, weights) == doctest::Approx(5.0).epsilon(1e-10));
  // W is itself an eigenstate: one weight is one
  CHECK(weights.maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("zero-decay state counts per sector match the rank oracle") {
  const int n = 5;
  const SpectralDecomposition decomposition = decompose(dicke_limit(n), 0.0);
  for (int sector = 0; sector <= n; ++sector) {
    int zeros = 0;
    for (Index j = 0; j < dim_for(n); ++j)
      if (decomposition.excitation[j] == sector &&
          std::abs(decomposition.decay_rates[j]) < 1e-9)
        ++zeros;
    CHECK(zeros == oracles::dicke_sector_zero_modes(n, sector));
  }
  // totals frozen from the oracle: 1 + 4 + 5 dark states
  int total = 0;
  for (Index j = 0; j < dim_for(n); ++j)
    if (std::abs(decomposition.decay_rates[j]) < 1e-9) ++total;
  CHECK(total == 10);
}

TEST_CASE("histogram weights are a probability distribution") {
  oracles::Rng rng(43);
  const SpectralDecomposition decomposition = decompose(dicke_limit(4), 0.0);
  for (int cases = 0; cases < 10; ++cases) {
    const DensityMatrix rho{rng.density_matrix(16), 4};
    const VectorR weights = population_histogram(decomposition, rho);
    CHECK(std::abs(weights.sum() - 1.0) < 1e-10);
    CHECK(weights.minCoeff() > -1e-12);
  }
}

TEST_CASE("ground state occupies the zero-rate ground eigenstate") {
  const SpectralDecomposition decomposition = decompose(dicke_limit(3), 0.0);
  const VectorR weights = population_histogram(decomposition, ground_state(3));
  for (Index j = 0; j < 8; ++j) {
    if (weights[j] > 0.5) {
      CHECK(weights[j] == doctest::Approx(1.0));
      CHECK(decomposition.excitation[j] == 0);
      CHECK(decomposition.decay_rates[j] == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("two computation paths for the weighted mean rate agree") {
  oracles::Rng rng(47);
  for (const auto& couplings :
       {dicke_limit(4), coupling_matrices(build_chain(4, 0.3))}) {
    const SpectralDecomposition decomposition = decompose(couplings, 0.0);
    const MatrixC g = decay_functional(couplings);
    for (int cases = 0; cases < 20; ++cases) {
      const VectorC psi = rng.pure_state(16);
      const VectorR weights = population_histogram(decomposition, pure_state(psi, 4));
      const Real direct = (psi.adjoint() * g * psi)(0, 0).real();
      const Real weighted = mean_decay_rate(decomposition, weights);
      if (decomposition.simultaneous) {
        CHECK(weighted == doctest::Approx(direct).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("rate multiset is stable under detuning changes") {
  // the Hamiltonian changes (degeneracies split) but the per-sector rates
  // must not
  const VectorR rates_zero = sorted_rates(decompose(dicke_limit(5), 0.0));
  const VectorR rates_detuned = sorted_rates(decompose(dicke_limit(5), 0.83));
  CHECK((rates_zero - rates_detuned).cwiseAbs().maxCoeff() < 1e-9);
  const CouplingMatrices shifted = dicke_limit(5, 1.0, 0.4);
  const VectorR rates_shifted = sorted_rates(decompose(shifted, 0.3));
  CHECK((rates_zero - rates_shifted).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("prepared-state mean rates in the five-atom Dicke limit") {
  const int n = 5;
  const SpectralDecomposition decomposition = decompose(dicke_limit(n), 0.0);
  const SpinOperator sz = collective_sz(n);

  const DensityMatrix sym = first_pulse(ground_state(n), make_sequence(n, 0));
  const VectorR w_sym = population_histogram(decomposition, sym);
  const Real mean_sym = mean_decay_rate(decomposition, w_sym);
  CHECK(mean_sym == doctest::Approx(7.5).epsilon(1e-9));
  CHECK(mean_sym > 1.0);

  const DensityMatrix asym = first_pulse(ground_state(n), make_sequence(n, 1));
  const VectorR w_asym = population_histogram(decomposition, asym);
  const Real mean_asym = mean_decay_rate(decomposition, w_asym);
  // the phase-balanced product state has <S+S-> = N/4 exactly
  CHECK(mean_asym == doctest::Approx(1.25).epsilon(1e-9));

  // per excitation the asymmetric preparation is subradiant, the symmetric
  // one superradiant
  const Real n_sym = expectation(sym, sz).real() + 0.5 * n;
  const Real n_asym = expectation(asym, sz).real() + 0.5 * n;
  CHECK(mean_sym / n_sym == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(mean_asym / n_asym == doctest::Approx(0.5).epsilon(1e-9));

  // occupancy of subradiant states (rate < Gamma) grows by more than a
  // factor ten under the phase spread
  Real sub_sym = 0.0, sub_asym = 0.0;
  for (Index j = 0; j < dim_for(n); ++j) {
    if (decomposition.decay_rates[j] < 1.0 - 1e-9) {
      sub_sym += w_sym[j];
      sub_asym += w_asym[j];
    }
  }
  CHECK(sub_sym < 0.05);
  CHECK(sub_asym > 0.4);
}

TEST_CASE("non-commuting couplings are flagged") {
  const CouplingMatrices chain = coupling_matrices(build_chain(3, 0.3));
  const SpectralDecomposition decomposition = decompose(chain, 0.0);
  CHECK(!decomposition.simultaneous);
  CHECK(decompose(dicke_limit(3), 0.0).simultaneous);
  CHECK(decompose(independent_atoms(3), 0.0).simultaneous);
}

TEST_CASE("eigenstates are orthonormal") {
  for (const auto& couplings :
       {dicke_limit(4), coupling_matrices(build_square(0.3))}) {
    const SpectralDecomposition decomposition = decompose(couplings, 0.2);
    const MatrixC gram =
        decomposition.eigenstates.adjoint() * decomposition.eigenstates;
    CHECK((gram - MatrixC::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(decomposition.decay_rates.minCoeff() > -1e-10);
  }
}

TEST_CASE("sort order is a permutation ordered by rate") {
  const SpectralDecomposition decomposition = decompose(dicke_limit(4), 0.0);
  std::vector<int> seen(16, 0);
  Real previous = -1.0;
  for (const int j : decomposition.sort_order) {
    ++seen[static_cast<std::size_t>(j)];
    CHECK(decomposition.decay_rates[j] >= previous - 1e-9);
    previous = decomposition.decay_rates[j];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}
