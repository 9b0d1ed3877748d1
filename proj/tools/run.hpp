#pragma once

#include <ostream>

#include "output.hpp"
#include "run_config.hpp"

namespace ptmag::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // validate found a failing check
inline constexpr int kExitStructural = 2;   // bad config, empty grid, unwritable output

// Runs one command, writing artifacts under config.out_dir and a short
// summary to `log`. Per-point numerical failures stay in-band as flagged rows.
int run(const RunConfig& config, std::ostream& log);

// Builders behind the commands, exposed for tests.
Table photon_number_table(const RunConfig& config);
Table sweep_table(const RunConfig& config, const SweepResult& result);
Table argmin_table(const RunConfig& config, const SweepResult& result);
Table qfi_table(const RunConfig& config);
Table entanglement_table(const RunConfig& config);
std::string sensitivity_report(const RunConfig& config);

struct ValidationCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<ValidationCheck> validation_checks(const StepControl& control);

}  // namespace ptmag::cli
