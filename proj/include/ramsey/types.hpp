#pragma once

#include <Eigen/Dense>

#include <complex>

namespace ramsey {

using Real = double;
using Complex = std::complex<Real>;

using MatrixC = Eigen::MatrixXcd;
using MatrixR = Eigen::MatrixXd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Tolerance ladder: construction-time invariants vs. accumulated-evolution
// invariants.
inline constexpr Real kConstructionTol = 1e-10;
inline constexpr Real kEvolutionTol = 1e-8;

// Dense representation is kept up to 8 spins (dimension 256).
inline constexpr int kMaxSpins = 8;

}  // namespace ramsey
