#include "ramsey/pulses.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace ramsey {

namespace {
constexpr Real kPi = 3.14159265358979323846;
}

std::vector<Real> phase_angles(int n_spins, int phase_index) {
  if (n_spins < 1) throw std::invalid_argument("phase_angles: need at least one spin");
  std::vector<Real> phases(static_cast<std::size_t>(n_spins));
  for (int j = 0; j < n_spins; ++j)
    phases[static_cast<std::size_t>(j)] = 2.0 * kPi * phase_index * j / n_spins;
  return phases;
}

PulseSequence make_sequence(int n_spins, int phase_index) {
  if (n_spins < 1 || n_spins > kMaxSpins)
    throw std::invalid_argument("make_sequence: spin count must be in [1, 8]");
  if (phase_index < 0 || phase_index > n_spins / 2)
    throw std::invalid_argument("make_sequence: phase index must be in [0, floor(N/2)]");
  return {n_spins, phase_index, phase_angles(n_spins, phase_index)};
}

MatrixC first_pulse_matrix(int n_spins, const std::vector<Real>& phases) {
  if (static_cast<int>(phases.size()) != n_spins)
    throw std::invalid_argument("first_pulse_matrix: one phase per spin required");
  const MatrixC ry = rotation_matrix(uniform_rotation(n_spins, Axis::y, kPi / 2));
  const MatrixC rz = rotation_matrix({Axis::z, phases});
  return rz * ry;
}

MatrixC second_pulse_matrix(int n_spins, const std::vector<Real>& phases) {
  if (static_cast<int>(phases.size()) != n_spins)
    throw std::invalid_argument("second_pulse_matrix: one phase per spin required");
  std::vector<Real> reversed(phases);
  for (Real& p : reversed) p = -p;
  const MatrixC rz = rotation_matrix({Axis::z, reversed});
  const MatrixC ry = rotation_matrix(uniform_rotation(n_spins, Axis::y, kPi / 2));
  return ry * rz;
}

MatrixC first_pulse_matrix(const PulseSequence& seq) {
  return first_pulse_matrix(seq.n_spins, seq.phases);
}

MatrixC second_pulse_matrix(const PulseSequence& seq) {
  return second_pulse_matrix(seq.n_spins, seq.phases);
}

DensityMatrix first_pulse(const DensityMatrix& rho, const PulseSequence& seq) {
  if (rho.n_spins != seq.n_spins) throw std::invalid_argument("first_pulse: dimension mismatch");
  const Real ground_population = rho.rho(rho.dim() - 1, rho.dim() - 1).real();
  if (std::abs(ground_population - 1.0) > 1e-9)
    std::clog << "first_pulse: input is not the ground state (population "
              << ground_population << ")\n";
  return apply_unitary(rho, first_pulse_matrix(seq));
}

DensityMatrix second_pulse(const DensityMatrix& rho, const PulseSequence& seq) {
  if (rho.n_spins != seq.n_spins)
    throw std::invalid_argument("second_pulse: dimension mismatch");
  return apply_unitary(rho, second_pulse_matrix(seq));
}

}  // namespace ramsey
