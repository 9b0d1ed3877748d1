#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptmag/config.hpp"
#include "ptmag/dynamics.hpp"
#include "ptmag/metrology.hpp"
#include "ptmag/oracle.hpp"
#include "ptmag/sensing.hpp"
#include "ptmag/sweep.hpp"

namespace ptmag::cli {

enum class Command { PhotonNumber, SweepPrecision, Qfi, Entanglement, Sensitivity, Validate };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view text);

// Everything a single invocation needs. Built from a TOML config plus flags;
// every section is optional and falls back to the defaults below.
//
//   units = "units_of_Gamma"
//   [model]        see ptmag/config.hpp
//   [grid]
//   detuning = { name = "Delta", min = 2.0, max = 4.0, count = 201, scale = "linear" }
//   time = { values = [2.0, 5.0, 10.0] }
//   temperatures = [0.5, 1.0, 2.0]
//   [input]        kind = "vacuum" | "thermal" | "fock", temperature, n_a, n_b
//   [metrology]    thermal_form = "printed" | "moment-exact", freeze_occupations,
//                  derivative = "analytic" | "finite-difference", fd_step
//   [tolerance]    rel, abs
//   [output]       name, format = "csv" | "json", plot_script
//   [sensing]      gamma0, omega_m0, integration_time, convention = "angular" | "cyclic-as-rate"
struct RunConfig {
  Command command = Command::Validate;
  std::string source = "<defaults>";
  std::string text;  // raw config text, hashed into output headers

  ModelConfig model;
  Axis detuning = Axis::linear("Delta", 0.0, 4.0, 41);
  Axis time = Axis::linear("t", 0.0, 5.0, 51);
  std::vector<double> temperatures;
  InitialCondition input;
  MetrologyOptions metrology;
  StepControl tolerance;
  MagnetometerSpec sensing = MagnetometerSpec::reference_device();
  bool sensing_device_from_model = false;

  std::filesystem::path out_dir = ".";
  std::string name;  // output stem; defaults to the command name
  OutputFormat format = OutputFormat::Csv;
  bool plot_script = false;

  std::string stem() const;
};

// Command-line overrides applied on top of the file.
struct Overrides {
  std::optional<UnitTag> units;
  std::optional<std::filesystem::path> out_dir;
  std::optional<OutputFormat> format;
  bool plot_script = false;
};

// Throws ConfigError with line and field on any malformed or inconsistent entry.
RunConfig parse_run_config(Command command, std::string_view text, std::string_view source,
                           const Overrides& overrides = {});
RunConfig load_run_config(Command command, const std::optional<std::filesystem::path>& path,
                          const Overrides& overrides = {});

// 64-bit FNV-1a, printed as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace ptmag::cli
