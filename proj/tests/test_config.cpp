#include <gtest/gtest.h>

#include "ptmag/config.hpp"
#include "run_config.hpp"

using namespace ptmag;
using namespace ptmag::cli;

TEST(ModelConfig, EffectiveForm) {
  const auto c = parse_model_config(R"(
units = "units_of_Gamma"
[model]
Gamma = 2.0
Delta = 4.0
omega2 = 1.0
prefactor = 0.02
)");
  EXPECT_EQ(c.units, UnitTag::UnitsOfGamma);
  EXPECT_FALSE(c.three_mode);
  EXPECT_EQ(c.effective.Gamma, 2.0);
  EXPECT_EQ(c.effective.omega1(), 5.0);
  EXPECT_EQ(c.effective.phase, Phase::ExceptionalPoint);
}

TEST(ModelConfig, ThreeModeForm) {
  const auto c = parse_model_config(R"(
units = "rad_per_s"
[model]
omega1 = 1.5
omega2 = -1.5
g = 10
kappa = 100
)");
  EXPECT_EQ(c.units, UnitTag::RadPerSecond);
  EXPECT_TRUE(c.three_mode);
  EXPECT_EQ(c.device.gamma1, 1.0);
  EXPECT_EQ(c.effective.Gamma, 1.0);
  EXPECT_FALSE(c.effective.pt_warning);
}

TEST(ModelConfig, DefaultsWhenEmpty) {
  const auto c = parse_model_config("");
  EXPECT_EQ(c.effective.Gamma, 1.0);
  EXPECT_EQ(c.effective.Delta, 2.0);
}

TEST(ModelConfig, DiagnosticsCarryLineAndField) {
  try {
    parse_model_config("[model]\nGamma = 1.0\nGama = 2.0\n", "bad.conf");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.field(), "model.Gama");
    EXPECT_NE(std::string(e.what()).find("bad.conf:3"), std::string::npos);
  }
  try {
    parse_model_config("[model]\nGamma = \"one\"\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.field(), "model.Gamma");
  }
  try {
    parse_model_config("units = \"hertz\"\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "units");
  }
  try {
    parse_model_config("[model\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
  }
  EXPECT_THROW(parse_model_config("[model]\ng13 = 1\ng23 = 2\nkappa = 10\n"), ConfigError);
  EXPECT_THROW(parse_model_config("[model]\nomega1 = 1\nDelta = 2\n"), ConfigError);
}

TEST(RunConfig, GridAndSections) {
  const auto rc = parse_run_config(Command::SweepPrecision, R"(
[grid]
detuning = { name = "omega1", min = 3.0, max = 6.0, count = 31, scale = "linear" }
time = { values = [5.0, 10.0] }
temperatures = [0.5, 1.0]
[metrology]
thermal_form = "moment-exact"
freeze_occupations = true
[output]
name = "fig"
format = "json"
)", "x.conf");
  EXPECT_EQ(rc.detuning.name, "omega1");
  EXPECT_EQ(rc.detuning.values().size(), 31u);
  EXPECT_EQ(rc.time.values().size(), 2u);
  EXPECT_EQ(rc.temperatures.size(), 2u);
  EXPECT_EQ(rc.metrology.thermal.form, ThermalForm::MomentExact);
  EXPECT_TRUE(rc.metrology.thermal.freeze_occupations);
  EXPECT_EQ(rc.format, OutputFormat::Json);
  EXPECT_EQ(rc.stem(), "fig");
}

TEST(RunConfig, StructuralErrors) {
  try {
    parse_run_config(Command::SweepPrecision, "[grid]\ndetuning = { min = 1.0, max = 2.0, count = 0 }\n", "e.conf");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "grid.detuning.count");
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_run_config(Command::Qfi, "[grid]\ntime = { values = [] }\n", "e"), ConfigError);
  EXPECT_THROW(parse_run_config(Command::Qfi, "[grid]\ntime = { values = [2.0, 1.0] }\n", "e"), ConfigError);
  EXPECT_THROW(parse_run_config(Command::Qfi, "[grids]\n", "e"), ConfigError);
  EXPECT_THROW(parse_run_config(Command::Qfi, "[input]\nkind = \"squeezed\"\n", "e"), ConfigError);
}

TEST(RunConfig, UnitTagsMustAgree) {
  Overrides o;
  o.units = UnitTag::RadPerSecond;
  EXPECT_THROW(parse_run_config(Command::Validate, "units = \"units_of_Gamma\"\n", "u", o), ConfigError);
  EXPECT_EQ(parse_run_config(Command::Validate, "", "u", o).model.units, UnitTag::RadPerSecond);
}

TEST(RunConfig, HashTracksContent) {
  const auto a = parse_run_config(Command::Qfi, "[model]\nGamma = 1.0\n", "a");
  const auto b = parse_run_config(Command::Qfi, "[model]\nGamma = 1.0\n", "b");
  const auto c = parse_run_config(Command::Qfi, "[model]\nGamma = 2.0\n", "a");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
}
