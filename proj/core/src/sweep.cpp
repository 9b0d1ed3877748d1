#include "ptmag/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptmag {

Axis Axis::linear(std::string name, double min, double max, std::size_t count) {
  Axis a;
  a.name = std::move(name);
  a.min = min;
  a.max = max;
  a.count = count;
  return a;
}

Axis Axis::logarithmic(std::string name, double min, double max, std::size_t count) {
  Axis a = linear(std::move(name), min, max, count);
  a.scale = AxisScale::Log;
  return a;
}

Axis Axis::list(std::string name, std::vector<double> values) {
  Axis a;
  a.name = std::move(name);
  a.explicit_values = std::move(values);
  return a;
}

std::vector<double> Axis::values() const {
  if (!explicit_values.empty()) {
    for (std::size_t i = 1; i < explicit_values.size(); ++i) {
      if (!(explicit_values[i] > explicit_values[i - 1])) {
        throw std::invalid_argument("axis '" + name + "' values must be strictly increasing");
      }
    }
    return explicit_values;
  }
  if (count == 0) throw std::invalid_argument("axis '" + name + "' is empty");
  if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("axis '" + name + "' bounds must be finite");
  if (count == 1) {
    if (min != max) throw std::invalid_argument("axis '" + name + "' with count 1 needs min == max");
    return {min};
  }
  if (!(max > min)) throw std::invalid_argument("axis '" + name + "' needs max > min");
  if (scale == AxisScale::Log && !(min > 0.0)) {
    throw std::invalid_argument("log axis '" + name + "' needs min > 0");
  }

  std::vector<double> v(count);
  const double span = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / span;
    v[i] = scale == AxisScale::Linear ? min + (max - min) * f
                                      : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
  }
  v.back() = max;
  return v;
}

void SweepSpec::validate() const {
  if (detuning.name != "Delta" && detuning.name != "omega1") {
    throw std::invalid_argument("detuning axis must be named Delta or omega1");
  }
  (void)detuning.values();
  const auto ts = time.values();
  if (ts.front() < 0.0) throw std::invalid_argument("time axis must be non-negative");
  if (!(Gamma >= 0.0)) throw std::invalid_argument("Gamma must be non-negative");
  if (!(prefactor >= 0.0)) throw std::invalid_argument("prefactor must be non-negative");
  for (double temp : temperatures) {
    if (!(temp >= 0.0)) throw std::invalid_argument("temperatures must be non-negative");
  }
}

SweepResult sweep_precision(const SweepSpec& spec) {
  spec.validate();
  const auto xs = spec.detuning.values();
  const auto ts = spec.time.values();
  const bool by_delta = spec.detuning.name == "Delta";
  const std::vector<double> temps = spec.vacuum() ? std::vector<double>{0.0} : spec.temperatures;

  SweepResult out;
  out.axis_name = spec.detuning.name;
  out.vacuum = spec.vacuum();
  out.rows.reserve(xs.size() * ts.size() * temps.size());

  for (double temperature : temps) {
    const InitialCondition init =
        spec.vacuum() ? InitialCondition::vacuum() : InitialCondition::thermal(temperature);
    for (double t : ts) {
      SliceMinimum best;
      best.t = t;
      best.temperature = temperature;
      best.delta2_omega1 = std::numeric_limits<double>::infinity();
      const std::size_t first = out.rows.size();

      for (double x : xs) {
        SweepRow row;
        row.x = x;
        row.temperature = temperature;
        const double omega1 = by_delta ? spec.omega2 + x : x;
        try {
          const auto model = EffectiveModel::pt(omega1, spec.omega2, spec.Gamma, spec.prefactor);
          row.result = precision_error_propagation(model, init, t, spec.options);
        } catch (const std::exception& e) {
          row.result.omega1 = omega1;
          row.result.Delta = omega1 - spec.omega2;
          row.result.t = t;
          row.result.photons = row.result.variance_Nc = row.result.dNc_domega1 =
              std::numeric_limits<double>::quiet_NaN();
          row.result.delta2_omega1 = std::numeric_limits<double>::infinity();
          row.result.qfi = row.result.crb = std::numeric_limits<double>::quiet_NaN();
          row.result.flags |= kFlagEvaluationFailed;
          row.error = e.what();
        }
        const std::size_t index = out.rows.size();
        if (row.result.ok() && row.result.delta2_omega1 < best.delta2_omega1) {
          best.found = true;
          best.row = index;
          best.x = x;
          best.Delta = row.result.Delta;
          best.delta2_omega1 = row.result.delta2_omega1;
        }
        out.rows.push_back(std::move(row));
      }
      if (best.found) {
        best.at_lower_edge = best.row == first;
        best.at_upper_edge = best.row + 1 == out.rows.size();
      }
      out.minima.push_back(best);
    }
  }
  return out;
}

}  // namespace ptmag
