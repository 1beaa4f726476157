#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Coincident emitters outside the Dicke constructor: the shift kernel
// diverges as r -> 0.
struct DegenerateGeometryError : std::domain_error {
  using std::domain_error::domain_error;
};

// A single tilted beam cannot imprint the requested phase gradient.
struct NotRealizableError : std::domain_error {
  using std::domain_error::domain_error;
};

// Appendix coefficients contain 1/gamma_A and 1/gamma_S.
struct SingularCoefficientError : std::domain_error {
  using std::domain_error::domain_error;
};

struct EvolutionDivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signal derivative below threshold everywhere on the search grid.
struct NoSensitivityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ramsey
