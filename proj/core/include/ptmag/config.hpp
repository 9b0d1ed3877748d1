#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ptmag/model.hpp"

namespace ptmag {

// Unit annotation carried by a config: angular rates in rad/s (times in s),
// or everything in units of Gamma (times in 1/Gamma).
enum class UnitTag { RadPerSecond, UnitsOfGamma };

std::string_view to_string(UnitTag tag);  // "rad_per_s" / "units_of_Gamma"
std::optional<UnitTag> parse_unit_tag(std::string_view text);

// Parse or validation failure in a config, located by line and field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, std::string field, const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }  // 0 when unknown
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  int line_ = 0;
  std::string field_;
};

// Model part of a TOML config:
//
//   units = "units_of_Gamma"        # or "rad_per_s"
//   [model]
//   Gamma = 1.0                     # effective form
//   omega1 = 3.0                    # or Delta = 2.0 (omega1 = omega2 + Delta)
//   omega2 = 1.0
//   prefactor = 0.01
//
// or the three-mode form, recognised by the presence of kappa:
//
//   [model]
//   omega1 = 1.0, omega2 = -1.0, omega3 = 0.0
//   g = 10.0                        # or g13 / g23
//   kappa = 100.0
//   gamma = 1.0                     # or gamma1 / gamma2; default g^2 / kappa
//
// Unknown keys are rejected. Other top-level sections are ignored here.
struct ModelConfig {
  UnitTag units = UnitTag::UnitsOfGamma;
  bool three_mode = false;
  PhysicalParams device;     // meaningful when three_mode
  EffectiveModel effective;  // reduced from device when three_mode
};

ModelConfig parse_model_config(std::string_view text, std::string_view source = "<config>");
ModelConfig load_model_config(const std::filesystem::path& path);

}  // namespace ptmag
