#pragma once

#include "ramsey/density_matrix.hpp"
#include "ramsey/ensemble.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

// Closed-form two-atom results in the collective basis
//   |G> = |gg>, |S> = (|eg>+|ge>)/sqrt2, |A> = (|eg>-|ge>)/sqrt2, |E> = |ee>,
// with decay channels gamma_S = Gamma + gamma and gamma_A = Gamma - gamma.

struct TwoAtomParams {
  Real gamma = 1.0;        // single-atom rate
  Real gamma_cross = 0.0;  // gamma = Gamma_12(r)
  Real omega_shift = 0.0;  // Omega = Omega_12(r)
  Real detuning = 0.0;     // omega

  Real gamma_s() const { return gamma + gamma_cross; }
  Real gamma_a() const { return gamma - gamma_cross; }
};

TwoAtomParams two_atom_params(const CouplingMatrices& couplings, Real detuning = 0.0);

enum class Scheme { symmetric, asymmetric };

// Dimensionless coefficients of the closed-form sensitivities; all sixteen
// are functions of gamma_S, gamma_A and Omega alone.
struct AppendixCoefficients {
  Real a_s, a_a;
  Real b_s, b_a;
  Real c_s, c_a;
  Real alpha_plus_s, alpha_minus_s, alpha_plus_a, alpha_minus_a;
  Real big_b_s, big_b_a;
  Real big_a_plus_s, big_a_minus_s, big_a_plus_a, big_a_minus_a;
};

// Requires gamma_S > 0 and gamma_A > 0 (SingularCoefficientError otherwise).
AppendixCoefficients coefficients(const TwoAtomParams& params);

// Tracked matrix elements of the two-atom state in the collective basis.
// `upper` is rho^{ES} (symmetric) or rho^{EA} (asymmetric); `lower` is
// rho^{SG} or rho^{AG}.
struct CollectiveState {
  Real ee = 0.0;
  Real ss = 0.0;
  Real aa = 0.0;
  Complex upper;
  Complex lower;
  Complex eg;
};

// Matrix elements of R1 |G><G| R1^dagger for the scheme's pulse (m = 0 or 1).
CollectiveState initial_conditions(Scheme scheme);

// Exponential solutions of the coupled coherence/population equations.
// The gamma_A = 0 limit (perfect dark state) is handled exactly.
//
// Note the asymmetric feed sign: with the basis above, deriving the equations
// from the master equation gives
//   d/dt rho^{AG} = [-gamma_A/2 - i(omega - Omega)] rho^{AG} - gamma_A rho^{EA},
// i.e. a minus sign on the feed term; the numerical evolution pins this down.
CollectiveState coherence_solutions(const TwoAtomParams& params, Real tau, Scheme scheme);

// Extracts the same elements from a full two-atom density matrix.
CollectiveState extract_collective_state(const DensityMatrix& state, Scheme scheme);

// Collective-basis signal expressions in their published normalisation,
// 2 sqrt2 Re(rho^{ES} + rho^{SG}) and 2 [1 + rho^{SS} - rho^{AA} + 2 Re rho^{EG}]
// (S scheme; A scheme with S <-> A and the sign of the rho^{EG} term flipped).
Real printed_signal(const CollectiveState& state, Scheme scheme);
Real printed_second_moment(const CollectiveState& state, Scheme scheme);

// Empirically determined normalisation against tr(rho_f Sz): the printed
// signal is scaled by +1/2 (symmetric) or -1/2 (asymmetric), the printed
// second moment by 1/4.
Real signal_normalization(Scheme scheme);
Real second_moment_normalization();

// tr(rho_f Sz) and <Sz^2> reconstructed from the closed-form solutions.
Real collective_signal(const CollectiveState& state, Scheme scheme);
Real collective_second_moment(const CollectiveState& state, Scheme scheme);

// Closed-form minimum sensitivities [delta omega]_S and [delta omega]_A as
// published (Appendix coefficients), evaluated at interrogation time tau.
Real closed_form_sensitivity(const TwoAtomParams& params, Real tau, Scheme scheme);

}  // namespace ramsey
