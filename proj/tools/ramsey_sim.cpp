#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "ramsey/config.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/runner.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

int emit(const ramsey::RunResult& result, const ramsey::RunConfig& config,
         const std::string& out_override, const std::string& format_override) {
  const std::string path = out_override.empty() ? config.output_path : out_override;
  const std::string format = format_override.empty() ? config.format : format_override;
  const std::string rendered = result.table.render(format);
  if (path.empty() || path == "-") {
    std::cout << rendered;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitConfigError;
    }
    file << rendered;
  }
  if (result.failure) {
    std::cerr << "numerical failure: " << *result.failure << "\n";
    return kExitNumericalError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey interferometry on collectively decaying emitter ensembles"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  std::string out_override;
  std::string format_override;
  int n_threads = 1;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_override, "output path (overrides [output].path; - = stdout)");
  app.add_option("--format", format_override, "csv or json (overrides [output].format)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", n_threads, "worker threads for sweep points")
      ->check(CLI::PositiveNumber);

  auto* couplings = app.add_subcommand("couplings", "pair coupling curves over distance");
  auto* sweep = app.add_subcommand("sensitivity", "sensitivity sweep over tau and schemes");
  auto* two_atom = app.add_subcommand("two-atom", "closed forms vs numerics for two atoms");
  app.add_subcommand("dicke-spectrum", "equal-coupling decay spectrum");

  CLI11_PARSE(app, argc, argv);

  try {
    const ramsey::RunConfig config = ramsey::parse_config_file(config_path);
    ramsey::RunResult result;
    if (couplings->parsed())
      result = ramsey::run_couplings(config);
    else if (sweep->parsed())
      result = ramsey::run_sensitivity_sweep(config, n_threads);
    else if (two_atom->parsed())
      result = ramsey::run_two_atom(config, n_threads);
    else
      result = ramsey::run_dicke_spectrum(config);
    return emit(result, config, out_override, format_override);
  } catch (const ramsey::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  }
}
