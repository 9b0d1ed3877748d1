#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "run.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
  using namespace ptmag::cli;

  CLI::App app{"ptmag: PT-symmetric cavity-magnonics magnetometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::optional<std::string> units;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  bool plot = false;

  app.add_option("--config", config_path, "TOML config file")->check(CLI::ExistingFile);
  app.add_option("--units", units, "unit system of the config: si (rad/s, s) or gamma (units of Gamma)")
      ->check(CLI::IsMember({"si", "gamma"}));
  app.add_option("--out", out_dir, "output directory (default: current directory)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-script", plot, "also write a gnuplot script next to the data");

  const std::map<std::string, std::string> help{
      {"photon-number", "moment trajectory and N_c over the time grid"},
      {"sweep-precision", "delta^2 omega1 over the detuning x time (x temperature) grid"},
      {"qfi", "quantum Fisher information and error-propagation precision, vacuum input"},
      {"entanglement", "nu-, log-negativity and HZ witness over Delta x t"},
      {"sensitivity", "field precision report for the SI device"},
      {"validate", "analytic vs effective ODE vs three-mode oracle checks"},
  };
  for (const auto& [name, text] : help) app.add_subcommand(name, text);

  CLI11_PARSE(app, argc, argv);

  const auto command = parse_command(app.get_subcommands().front()->get_name());
  Overrides overrides;
  if (units) overrides.units = *units == "si" ? ptmag::UnitTag::RadPerSecond : ptmag::UnitTag::UnitsOfGamma;
  if (out_dir) overrides.out_dir = *out_dir;
  if (format) overrides.format = *format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  overrides.plot_script = plot;

  try {
    std::optional<std::filesystem::path> path;
    if (config_path) path = *config_path;
    const RunConfig config = load_run_config(*command, path, overrides);
    return run(config, std::cout);
  } catch (const ptmag::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitStructural;
  }
}
