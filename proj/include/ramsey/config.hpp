#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramsey/dynamics.hpp"
#include "ramsey/ensemble.hpp"
#include "ramsey/types.hpp"

namespace ramsey {

struct GeometryConfig {
  std::string builder;  // chain | square | dicke | independent | positions
  int n = 0;
  Real spacing = 0.0;
  Real gamma = 1.0;
  Real omega_d = 0.0;
  std::vector<Vector3> positions;
  std::optional<Vector3> dipole;
};

struct GridConfig {
  Real min = 0.0;
  Real max = 0.0;
  int points = 0;
  bool log_scale = false;

  std::vector<Real> values() const;
};

// Parsed contents of one run configuration. Sections and keys are validated
// strictly: unknown names are hard errors.
struct RunConfig {
  std::optional<GeometryConfig> geometry;
  std::vector<int> schemes = {0};  // m values

  std::optional<GridConfig> tau;

  Real omega_phase_min = 0.0;  // search window for omega * tau
  Real omega_phase_max = 3.14159265358979323846;
  int omega_points = 201;

  std::string output_path;  // empty = stdout
  std::string format = "csv";
  bool raw = false;

  IntegratorOptions integrator;

  std::optional<GridConfig> couplings_r;
  Real couplings_cos_theta = 0.0;

  std::optional<Real> two_atom_r;
  int dicke_m_asym = 1;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Geometry section -> coupling matrices (builders or explicit positions).
CouplingMatrices couplings_from_config(const GeometryConfig& geometry);

}  // namespace ramsey
