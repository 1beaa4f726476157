#include "ramsey/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ramsey/errors.hpp"
#include "ramsey/numerics.hpp"

namespace ramsey {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_tokens(const std::string& s, char delimiter = ' ') {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream is(s);
  while (std::getline(is, token, delimiter)) {
    token = trim(token);
    if (!token.empty()) tokens.push_back(token);
  }
  return tokens;
}

Real to_real(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const Real v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("config: expected a number for " + where + ", got '" + value + "'");
  }
}

int to_int(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError("config: expected an integer for " + where + ", got '" + value + "'");
  }
}

bool to_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: expected true/false for " + where + ", got '" + value + "'");
}

Vector3 to_vector3(const std::string& value, const std::string& where) {
  const auto tokens = split_tokens(value);
  if (tokens.size() != 3)
    throw ConfigError("config: expected three components for " + where + ", got '" + value +
                      "'");
  return {to_real(tokens[0], where), to_real(tokens[1], where), to_real(tokens[2], where)};
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

SectionMap parse_sections(const std::string& text) {
  SectionMap sections;
  std::istringstream is(text);
  std::string line;
  std::string current;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    if (current.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    auto [it, inserted] = sections[current].emplace(key, Entry{value, line_no, false});
    if (!inserted)
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key +
                        "'");
  }
  return sections;
}

class Reader {
 public:
  explicit Reader(SectionMap sections) : sections_(std::move(sections)) {}

  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

  std::optional<std::string> get(const std::string& section, const std::string& key) {
    auto sec = sections_.find(section);
    if (sec == sections_.end()) return std::nullopt;
    auto entry = sec->second.find(key);
    if (entry == sec->second.end()) return std::nullopt;
    entry->second.used = true;
    return entry->second.value;
  }

  // every key must have been consumed; sections themselves were touched by
  // the schema walk
  void finish(const std::vector<std::string>& known_sections) const {
    for (const auto& [section, entries] : sections_) {
      if (std::find(known_sections.begin(), known_sections.end(), section) ==
          known_sections.end())
        throw ConfigError("config: unknown section [" + section + "]");
      for (const auto& [key, entry] : entries)
        if (!entry.used)
          throw ConfigError("config line " + std::to_string(entry.line) + ": unknown key '" +
                            key + "' in [" + section + "]");
    }
  }

 private:
  SectionMap sections_;
};

GridConfig read_grid(Reader& reader, const std::string& section, const std::string& min_key,
                     const std::string& max_key) {
  GridConfig grid;
  const auto min = reader.get(section, min_key);
  const auto max = reader.get(section, max_key);
  const auto points = reader.get(section, "points");
  if (!min || !max || !points)
    throw ConfigError("config: [" + section + "] requires " + min_key + ", " + max_key +
                      " and points");
  grid.min = to_real(*min, section + "." + min_key);
  grid.max = to_real(*max, section + "." + max_key);
  grid.points = to_int(*points, section + ".points");
  if (const auto scale = reader.get(section, "scale")) {
    if (*scale == "log")
      grid.log_scale = true;
    else if (*scale != "linear")
      throw ConfigError("config: [" + section + "].scale must be linear or log");
  }
  if (grid.points < 1) throw ConfigError("config: [" + section + "].points must be >= 1");
  if (!(grid.min <= grid.max))
    throw ConfigError("config: [" + section + "] needs " + min_key + " <= " + max_key);
  return grid;
}

}  // namespace

std::vector<Real> GridConfig::values() const {
  if (points == 1) return {min};
  return log_scale ? geomspace(min, max, points) : linspace(min, max, points);
}

RunConfig parse_config_text(const std::string& text) {
  Reader reader(parse_sections(text));
  RunConfig config;

  if (reader.has_section("geometry")) {
    GeometryConfig geometry;
    const auto builder = reader.get("geometry", "builder");
    if (!builder) throw ConfigError("config: [geometry] requires builder");
    geometry.builder = *builder;
    if (const auto n = reader.get("geometry", "n")) geometry.n = to_int(*n, "geometry.n");
    if (const auto spacing = reader.get("geometry", "spacing"))
      geometry.spacing = to_real(*spacing, "geometry.spacing");
    if (const auto gamma = reader.get("geometry", "gamma"))
      geometry.gamma = to_real(*gamma, "geometry.gamma");
    if (const auto omega_d = reader.get("geometry", "omega_d"))
      geometry.omega_d = to_real(*omega_d, "geometry.omega_d");
    if (const auto dipole = reader.get("geometry", "dipole"))
      geometry.dipole = to_vector3(*dipole, "geometry.dipole");
    if (const auto positions = reader.get("geometry", "positions")) {
      for (const auto& triple : split_tokens(*positions, ';'))
        geometry.positions.push_back(to_vector3(triple, "geometry.positions"));
    }
    config.geometry = std::move(geometry);
  }

  if (const auto m_list = reader.get("sequence", "m")) {
    config.schemes.clear();
    for (const auto& token : split_tokens(*m_list)) {
      const int m = to_int(token, "sequence.m");
      if (m < 0) throw ConfigError("config: [sequence].m entries must be >= 0");
      config.schemes.push_back(m);
    }
    if (config.schemes.empty()) throw ConfigError("config: [sequence].m is empty");
  }

  if (reader.has_section("tau")) {
    config.tau = read_grid(reader, "tau", "min", "max");
    if (config.tau->min <= 0.0)
      throw ConfigError("config: [tau].min must be positive (sensitivity diverges at tau = 0)");
  }

  if (reader.has_section("omega")) {
    if (const auto v = reader.get("omega", "phase_min"))
      config.omega_phase_min = to_real(*v, "omega.phase_min");
    if (const auto v = reader.get("omega", "phase_max"))
      config.omega_phase_max = to_real(*v, "omega.phase_max");
    if (const auto v = reader.get("omega", "points"))
      config.omega_points = to_int(*v, "omega.points");
    if (config.omega_points < 3) throw ConfigError("config: [omega].points must be >= 3");
    if (!(config.omega_phase_min < config.omega_phase_max))
      throw ConfigError("config: [omega] needs phase_min < phase_max");
  }

  if (reader.has_section("output")) {
    if (const auto v = reader.get("output", "path")) config.output_path = *v;
    if (const auto v = reader.get("output", "format")) {
      if (*v != "csv" && *v != "json")
        throw ConfigError("config: [output].format must be csv or json");
      config.format = *v;
    }
    if (const auto v = reader.get("output", "raw")) config.raw = to_bool(*v, "output.raw");
  }

  if (reader.has_section("integrator")) {
    if (const auto v = reader.get("integrator", "method")) {
      if (*v == "auto")
        config.integrator.method = Method::automatic;
      else if (*v == "spectral")
        config.integrator.method = Method::spectral;
      else if (*v == "expm")
        config.integrator.method = Method::expm;
      else if (*v == "rk45")
        config.integrator.method = Method::rk45;
      else
        throw ConfigError("config: [integrator].method must be auto|spectral|expm|rk45");
    }
    if (const auto v = reader.get("integrator", "rtol"))
      config.integrator.rtol = to_real(*v, "integrator.rtol");
    if (const auto v = reader.get("integrator", "atol"))
      config.integrator.atol = to_real(*v, "integrator.atol");
  }

  if (reader.has_section("couplings")) {
    config.couplings_r = read_grid(reader, "couplings", "rmin", "rmax");
    if (config.couplings_r->min <= 0.0)
      throw ConfigError("config: [couplings].rmin must be positive");
    if (const auto v = reader.get("couplings", "cos_theta"))
      config.couplings_cos_theta = to_real(*v, "couplings.cos_theta");
  }

  if (const auto v = reader.get("two_atom", "r")) {
    const Real r = to_real(*v, "two_atom.r");
    if (r <= 0.0) throw ConfigError("config: [two_atom].r must be positive");
    config.two_atom_r = r;
  }

  if (const auto v = reader.get("dicke", "m_asym")) {
    config.dicke_m_asym = to_int(*v, "dicke.m_asym");
    if (config.dicke_m_asym < 1) throw ConfigError("config: [dicke].m_asym must be >= 1");
  }

  reader.finish({"geometry", "sequence", "tau", "omega", "output", "integrator", "couplings",
                 "two_atom", "dicke"});
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

CouplingMatrices couplings_from_config(const GeometryConfig& geometry) {
  const std::string& builder = geometry.builder;
  if (builder == "chain") {
    if (geometry.n < 1 || geometry.spacing <= 0.0)
      throw ConfigError("config: chain geometry requires n >= 1 and spacing > 0");
    EmitterEnsemble ensemble = build_chain(geometry.n, geometry.spacing, geometry.gamma);
    if (geometry.dipole) ensemble.dipole = geometry.dipole->normalized();
    return coupling_matrices(ensemble);
  }
  if (builder == "square") {
    if (geometry.spacing <= 0.0) throw ConfigError("config: square geometry requires spacing");
    EmitterEnsemble ensemble = build_square(geometry.spacing, geometry.gamma);
    if (geometry.dipole) ensemble.dipole = geometry.dipole->normalized();
    return coupling_matrices(ensemble);
  }
  if (builder == "dicke") {
    if (geometry.n < 1) throw ConfigError("config: dicke geometry requires n >= 1");
    return dicke_limit(geometry.n, geometry.gamma, geometry.omega_d);
  }
  if (builder == "independent") {
    if (geometry.n < 1) throw ConfigError("config: independent geometry requires n >= 1");
    return independent_atoms(geometry.n, geometry.gamma);
  }
  if (builder == "positions") {
    if (geometry.positions.empty())
      throw ConfigError("config: positions geometry requires a position list");
    const Vector3 dipole = geometry.dipole.value_or(Vector3::UnitZ()).normalized();
    return coupling_matrices(
        make_ensemble(geometry.positions, dipole, geometry.gamma));
  }
  throw ConfigError("config: unknown geometry builder '" + builder + "'");
}

}  // namespace ramsey
