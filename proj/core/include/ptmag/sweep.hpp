#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptmag/metrology.hpp"

namespace ptmag {

enum class AxisScale { Linear, Log };

// Grid axis: either min/max/count with a scale, or an explicit ascending list.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  AxisScale scale = AxisScale::Linear;
  std::vector<double> explicit_values;

  static Axis linear(std::string name, double min, double max, std::size_t count);
  static Axis logarithmic(std::string name, double min, double max, std::size_t count);
  static Axis list(std::string name, std::vector<double> values);

  // Throws std::invalid_argument for an empty or non-monotone axis.
  std::vector<double> values() const;
};

// Precision sweep over (Delta or omega1) x t x T at fixed Gamma, omega2 and prefactor.
struct SweepSpec {
  double Gamma = 1.0;
  double omega2 = 1.0;
  double prefactor = 0.01;
  Axis detuning = Axis::linear("Delta", 2.0, 4.0, 2);  // name "Delta" or "omega1"
  Axis time = Axis::list("t", {1.0});
  std::vector<double> temperatures;  // empty: vacuum input
  MetrologyOptions options;

  void validate() const;
  bool vacuum() const { return temperatures.empty(); }
};

struct SweepRow {
  double x = 0.0;            // detuning-axis value
  double temperature = 0.0;  // 0 for vacuum
  PrecisionResult result;
  std::string error;         // set when the point threw
};

// Minimum of delta^2 omega1 along the detuning axis for one (t, T) slice.
struct SliceMinimum {
  double t = 0.0;
  double temperature = 0.0;
  bool found = false;  // false if every row in the slice is flagged
  std::size_t row = 0;
  double x = 0.0;
  double Delta = 0.0;
  double delta2_omega1 = 0.0;
  bool at_lower_edge = false;  // minimum sits on the first grid point
  bool at_upper_edge = false;
};

struct SweepResult {
  std::string axis_name;
  bool vacuum = true;
  std::vector<SweepRow> rows;  // ordered T (outer), t, x (inner)
  std::vector<SliceMinimum> minima;
};

SweepResult sweep_precision(const SweepSpec& spec);

}  // namespace ptmag
