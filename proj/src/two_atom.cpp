#include "ramsey/two_atom.hpp"

#include <cmath>
#include <stdexcept>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

constexpr Real kInvTwoSqrt2 = 0.35355339059327373;  // 1/(2 sqrt 2)

// Collective basis vectors in the {|ee>,|eg>,|ge>,|gg>} ordering.
VectorC basis_e() { return (VectorC(4) << 1, 0, 0, 0).finished(); }
VectorC basis_s() {
  return (VectorC(4) << 0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0).finished();
}
VectorC basis_a() {
  return (VectorC(4) << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0).finished();
}
VectorC basis_g() { return (VectorC(4) << 0, 0, 0, 1).finished(); }

// (1 - exp(-z tau)) / z
Complex feed_integral(Complex z, Real tau) {
  if (std::abs(z) < 1e-300) return Complex(tau, 0.0);
  return (1.0 - std::exp(-z * tau)) / z;
}

// (e^{-a tau} - e^{-b tau}) / (b - a), exact at b = a
Real population_feed(Real a, Real b, Real tau) {
  if (a == b) return tau * std::exp(-a * tau);
  return std::exp(-a * tau) * (-std::expm1(-(b - a) * tau)) / (b - a);
}

}  // namespace

TwoAtomParams two_atom_params(const CouplingMatrices& couplings, Real detuning) {
  if (couplings.size() != 2) throw std::invalid_argument("two_atom_params: need two atoms");
  return {couplings.gamma, couplings.gamma_matrix(0, 1), couplings.omega_matrix(0, 1),
          detuning};
}

AppendixCoefficients coefficients(const TwoAtomParams& params) {
  const Real gs = params.gamma_s();
  const Real ga = params.gamma_a();
  if (gs <= 0.0 || ga <= 0.0)
    throw SingularCoefficientError("coefficients: gamma_S and gamma_A must be positive");
  const Real gamma = params.gamma;
  const Real omega = params.omega_shift;
  const Real p = gamma * gamma + 4.0 * omega * omega;

  AppendixCoefficients c;
  c.a_s = 0.25 * (ga / gs - gs / ga);
  c.a_a = -c.a_s;
  c.b_s = (4.0 * gamma - gs) / (4.0 * ga);
  c.b_a = (4.0 * gamma - ga) / (4.0 * gs);
  c.c_s = ga / (4.0 * gs);
  c.c_a = gs / (4.0 * ga);
  c.alpha_plus_s = 1.0 + gamma * gs / p;
  c.alpha_minus_s = 1.0 - gamma * gs / p;
  c.alpha_plus_a = 1.0 + gamma * ga / p;
  c.alpha_minus_a = 1.0 - gamma * ga / p;
  c.big_b_s = 2.0 * omega * gs / p;
  c.big_b_a = 2.0 * omega * ga / p;
  c.big_a_plus_s = std::hypot(c.alpha_plus_s, c.big_b_s);
  c.big_a_minus_s = std::hypot(c.alpha_minus_s, c.big_b_s);
  c.big_a_plus_a = std::hypot(c.alpha_plus_a, c.big_b_a);
  c.big_a_minus_a = std::hypot(c.alpha_minus_a, c.big_b_a);
  return c;
}

CollectiveState initial_conditions(Scheme scheme) {
  CollectiveState state;
  state.ee = 0.25;
  if (scheme == Scheme::symmetric) {
    // R1(m=0)|G> = (|E> + sqrt2 |S> + |G>)/2
    state.ss = 0.5;
    state.aa = 0.0;
    state.upper = kInvTwoSqrt2;   // rho^{ES}
    state.lower = kInvTwoSqrt2;   // rho^{SG}
    state.eg = 0.25;
  } else {
    // R1(m=1)|G> = (-|E> + sqrt2 |A> + |G>)/2
    state.ss = 0.0;
    state.aa = 0.5;
    state.upper = -kInvTwoSqrt2;  // rho^{EA}
    state.lower = kInvTwoSqrt2;   // rho^{AG}
    state.eg = -0.25;
  }
  return state;
}

CollectiveState coherence_solutions(const TwoAtomParams& params, Real tau, Scheme scheme) {
  if (tau < 0.0) throw std::invalid_argument("coherence_solutions: tau must be non-negative");
  const Real gamma = params.gamma;
  const Real gs = params.gamma_s();
  const Real ga = params.gamma_a();
  const Real omega = params.detuning;
  const Real shift = params.omega_shift;
  const CollectiveState init = initial_conditions(scheme);

  CollectiveState out;
  out.ee = init.ee * std::exp(-2.0 * gamma * tau);
  // populations fed from |E> through the respective channel
  out.ss = init.ss * std::exp(-gs * tau) + init.ee * gs * population_feed(gs, 2.0 * gamma, tau);
  out.aa = init.aa * std::exp(-ga * tau) + init.ee * ga * population_feed(ga, 2.0 * gamma, tau);
  out.eg = init.eg * std::exp(Complex(-gamma, -2.0 * omega) * tau);

  if (scheme == Scheme::symmetric) {
    out.upper = init.upper * std::exp(Complex(-(2.0 * gamma + gs) / 2.0, -(omega - shift)) *
                                      tau);
    const Complex feed = feed_integral(Complex(gamma, -2.0 * shift), tau);
    out.lower = std::exp(Complex(-gs / 2.0, -(omega + shift)) * tau) *
                (init.lower + gs * init.upper * feed);
  } else {
    out.upper = init.upper * std::exp(Complex(-(2.0 * gamma + ga) / 2.0, -(omega + shift)) *
                                      tau);
    // feed sign from the master equation; see header note
    const Complex feed = feed_integral(Complex(gamma, 2.0 * shift), tau);
    out.lower = std::exp(Complex(-ga / 2.0, -(omega - shift)) * tau) *
                (init.lower - ga * init.upper * feed);
  }
  return out;
}

CollectiveState extract_collective_state(const DensityMatrix& state, Scheme scheme) {
  if (state.n_spins != 2)
    throw std::invalid_argument("extract_collective_state: need a two-atom state");
  const VectorC e = basis_e(), s = basis_s(), a = basis_a(), g = basis_g();
  const auto element = [&](const VectorC& x, const VectorC& y) -> Complex {
    return (x.adjoint() * state.rho * y)(0, 0);
  };
  CollectiveState out;
  out.ee = element(e, e).real();
  out.ss = element(s, s).real();
  out.aa = element(a, a).real();
  out.eg = element(e, g);
  if (scheme == Scheme::symmetric) {
    out.upper = element(e, s);
    out.lower = element(s, g);
  } else {
    out.upper = element(e, a);
    out.lower = element(a, g);
  }
  return out;
}

Real printed_signal(const CollectiveState& state, Scheme scheme) {
  const Real two_sqrt2 = 2.0 * std::sqrt(2.0);
  if (scheme == Scheme::symmetric) return two_sqrt2 * (state.upper + state.lower).real();
  return two_sqrt2 * (state.upper - state.lower).real();
}

Real printed_second_moment(const CollectiveState& state, Scheme scheme) {
  if (scheme == Scheme::symmetric)
    return 2.0 * (1.0 + state.ss - state.aa + 2.0 * state.eg.real());
  return 2.0 * (1.0 + state.aa - state.ss - 2.0 * state.eg.real());
}

Real signal_normalization(Scheme scheme) {
  return scheme == Scheme::symmetric ? 0.5 : -0.5;
}

Real second_moment_normalization() { return 0.25; }

Real collective_signal(const CollectiveState& state, Scheme scheme) {
  return signal_normalization(scheme) * printed_signal(state, scheme);
}

Real collective_second_moment(const CollectiveState& state, Scheme scheme) {
  return second_moment_normalization() * printed_second_moment(state, scheme);
}

Real closed_form_sensitivity(const TwoAtomParams& params, Real tau, Scheme scheme) {
  if (tau <= 0.0)
    throw std::invalid_argument("closed_form_sensitivity: tau must be positive");
  const AppendixCoefficients c = coefficients(params);
  const Real gamma = params.gamma;
  const Real gs = params.gamma_s();
  const Real ga = params.gamma_a();
  const Real e2 = std::exp(-2.0 * gamma * tau);
  const Real es = std::exp(-gs * tau);
  const Real ea = std::exp(-ga * tau);
  if (scheme == Scheme::symmetric) {
    const Real numerator = std::sqrt(2.0 * (1.0 + c.a_s * e2 + c.b_s * es - c.c_s * ea));
    const Real denominator = tau * std::exp(-gs * tau / 2.0) *
                             (std::exp(-gamma * tau) * c.big_a_minus_s + c.big_a_plus_s);
    return numerator / denominator;
  }
  const Real numerator = std::sqrt(2.0 * (1.0 + c.a_a * e2 + c.b_a * ea - c.c_a * es));
  const Real denominator = tau * std::exp(-ga * tau / 2.0) *
                           (std::exp(-gamma * tau) * c.big_a_plus_a + c.big_a_minus_a);
  return numerator / denominator;
}

}  // namespace ramsey
