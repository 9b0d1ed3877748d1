#include "ptmag/sensing.hpp"

#include <cmath>
#include <stdexcept>

#include "ptmag/dynamics.hpp"

namespace ptmag {

std::string_view to_string(FrequencyConvention convention) {
  return convention == FrequencyConvention::Angular ? "angular" : "cyclic-as-rate";
}

void MagnetometerSpec::validate() const {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gyromagnetic ratio must be positive");
  if (!(integration_time > 0.0)) throw std::invalid_argument("integration time must be positive");
  device.validate();
}

MagnetometerSpec MagnetometerSpec::reference_device() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  MagnetometerSpec spec;
  const double g = two_pi * 10e6;
  const double kappa = two_pi * 100e6;
  const double delta = two_pi * 2e6;
  spec.device.omega1 = 0.5 * delta;
  spec.device.omega2 = -0.5 * delta;
  spec.device.omega3 = 0.0;
  spec.device.g13 = spec.device.g23 = g;
  spec.device.kappa = kappa;
  spec.device.gamma1 = spec.device.gamma2 = g * g / kappa;
  spec.integration_time = 10.0;
  return spec;
}

double field_to_frequency(double field_tesla, const MagnetometerSpec& spec) {
  return spec.gamma0 * field_tesla + spec.omega_m0;
}

FieldPrecision field_precision(const MagnetometerSpec& spec) {
  spec.validate();
  FieldPrecision r;
  r.convention = spec.convention;
  r.rate_scale = spec.convention == FrequencyConvention::Angular ? 1.0 : 1.0 / (2.0 * std::numbers::pi);
  r.gamma0 = spec.gamma0 * r.rate_scale;
  r.t = spec.integration_time;

  const PhysicalParams device = spec.device.scaled(r.rate_scale);
  const EffectiveModel model = reduce(device);
  r.Gamma = model.Gamma;
  r.Delta = model.Delta;
  r.kappa = device.kappa;
  r.prefactor = model.prefactor;
  r.phase = model.phase;
  r.adiabatic_valid = device.adiabatic_valid();
  r.Gamma_t = model.Gamma * r.t;

  PrecisionResult p;
  if (model.Gamma > 0.0) {
    // Work with Gamma = 1 and time in 1/Gamma; delta^2 omega1 scales as Gamma^2.
    const auto nd = nondimensionalize(model);
    p = precision_error_propagation(nd.model, InitialCondition::vacuum(), r.Gamma_t);
    p.dNc_domega1 /= nd.rate_unit;
    p.delta2_omega1 *= nd.rate_unit * nd.rate_unit;
  } else {
    p = precision_error_propagation(model, InitialCondition::vacuum(), r.t);
  }
  r.photons = p.photons;
  r.variance_Nc = p.variance_Nc;
  r.dNc_domega1 = p.dNc_domega1;
  r.delta2_omega1 = p.delta2_omega1;
  r.delta_omega1 = std::sqrt(p.delta2_omega1);
  r.deltaB = r.delta_omega1 / r.gamma0;
  r.flags = p.flags;
  return r;
}

double sensitivity(double deltaB, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("integration time must be positive");
  return deltaB * std::sqrt(t);
}

}  // namespace ptmag
