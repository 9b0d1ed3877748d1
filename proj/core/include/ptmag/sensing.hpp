#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

#include "ptmag/metrology.hpp"
#include "ptmag/model.hpp"

namespace ptmag {

// How SI device rates enter the dynamics.
//   Angular:      rates are angular (2 pi f) and gamma0 is 2 pi * 28 GHz/T.
//   CyclicAsRate: every rate and gamma0 is divided by 2 pi first, i.e. the
//                 cyclic numbers (MHz, GHz/T) are used directly as rates.
enum class FrequencyConvention { Angular, CyclicAsRate };

std::string_view to_string(FrequencyConvention convention);

inline constexpr double kGyromagneticRatioHzPerTesla = 28e9;

struct MagnetometerSpec {
  double gamma0 = 2.0 * std::numbers::pi * kGyromagneticRatioHzPerTesla;  // rad/(s T)
  double omega_m0 = 0.0;    // anisotropy offset, rad/s
  PhysicalParams device;    // angular rates, rad/s
  double integration_time = 10.0;  // s
  FrequencyConvention convention = FrequencyConvention::Angular;

  void validate() const;

  // Delta = 2 pi x 2 MHz, kappa = 2 pi x 100 MHz, g = 2 pi x 10 MHz, omega3 = 0,
  // balanced gain gamma = g^2 / kappa, t = 10 s. Sits exactly on the exceptional point.
  static MagnetometerSpec reference_device();
};

// omega1 = gamma0 B + omega_m0 (Kittel mode).
double field_to_frequency(double field_tesla, const MagnetometerSpec& spec);

// Every intermediate of the field-precision pipeline, in the working units of
// the chosen convention (rates in 1/s, derivative in s).
struct FieldPrecision {
  FrequencyConvention convention = FrequencyConvention::Angular;
  double rate_scale = 1.0;  // factor applied to the SI device rates
  double gamma0 = 0.0;      // as used
  double Gamma = 0.0;
  double Delta = 0.0;
  double kappa = 0.0;
  double prefactor = 0.0;
  double Gamma_t = 0.0;     // dimensionless evolution time
  Phase phase = Phase::PTExact;
  bool adiabatic_valid = true;
  double t = 0.0;
  double photons = 0.0;
  double variance_Nc = 0.0;
  double dNc_domega1 = 0.0;
  double delta2_omega1 = 0.0;
  double delta_omega1 = 0.0;
  double deltaB = 0.0;      // tesla
  std::uint32_t flags = kFlagNone;

  bool ok() const { return (flags & (kFlagDerivativeUnreliable | kFlagNonFinite)) == 0; }
};

// deltaB = sqrt(delta^2 omega1) / gamma0 for vacuum input. The metrology is
// evaluated in units of Gamma and converted back.
FieldPrecision field_precision(const MagnetometerSpec& spec);

// S = deltaB * sqrt(t), in T / sqrt(Hz).
double sensitivity(double deltaB, double t);

}  // namespace ptmag
