#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>

namespace ptmag {

// Relative half-width of the band around |Delta| = 2 Gamma that is classified
// as the exceptional point. Inside the band the gap Delta^2 - 4 Gamma^2 is
// snapped to zero.
inline constexpr double kExceptionalPointBand = 1e-9;

// kappa must exceed this multiple of max(|omega3|, gamma1, gamma2) for the
// cavity elimination to be flagged as valid.
inline constexpr double kAdiabaticRatio = 10.0;

// Gain and dissipative coupling are considered balanced (PT condition) when
// |gamma - Gamma| <= kBalanceTolerance * max(gamma, Gamma).
inline constexpr double kBalanceTolerance = 1e-9;

// Three-mode magnon-cavity-magnon constants. Frequencies are detunings in a
// rotating frame; all entries share one rate unit (rad/s or units of Gamma).
struct PhysicalParams {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
  double g13 = 0.0;
  double g23 = 0.0;
  double gamma1 = 0.0;  // magnon gain
  double gamma2 = 0.0;
  double kappa = 1.0;   // cavity decay

  // Throws std::invalid_argument if kappa <= 0 or a coupling or gain is negative.
  void validate() const;
  bool adiabatic_valid() const;
  PhysicalParams scaled(double s) const;
};

enum class Phase { PTExact, Broken, ExceptionalPoint };

std::string_view to_string(Phase phase);
Phase classify(double delta, double gamma_c);

// Two-mode model left after eliminating the cavity.
struct EffectiveModel {
  double Omega = 0.0;      // omega1 + omega2
  double Delta = 0.0;      // omega1 - omega2
  double Gamma = 0.0;      // g^2 / kappa
  double gain = 0.0;       // magnon gain gamma; equals Gamma on the PT path
  double prefactor = 0.0;  // g^2 / kappa^2, maps <(a+b)^dag (a+b)> to N_c
  Phase phase = Phase::PTExact;
  bool pt_warning = false;  // gain != Gamma: H_eff keeps an i(gamma - Gamma) diagonal

  // Balanced (gamma = Gamma) model from magnon detunings.
  static EffectiveModel pt(double omega1, double omega2, double Gamma, double prefactor);

  double omega1() const { return 0.5 * (Omega + Delta); }
  double omega2() const { return 0.5 * (Omega - Delta); }

  // Delta^2 - 4 Gamma^2, exactly zero at the exceptional point.
  double gap() const;
  // lambda = sqrt(4 Gamma^2 - Delta^2) and Lambda = sqrt(Delta^2 - 4 Gamma^2),
  // principal branches.
  std::complex<double> lambda() const;
  std::complex<double> Lambda() const;

  bool is_pt() const { return !pt_warning; }

  // Same model with omega1 replaced; omega2, Gamma, gain and prefactor kept.
  EffectiveModel with_omega1(double omega1) const;
  // Multiply every rate by s > 0.
  EffectiveModel scaled(double s) const;
};

// Model in units where Gamma = 1, together with the Gamma it was divided by.
struct Nondimensional {
  EffectiveModel model;
  double rate_unit = 1.0;  // multiply dimensionless rates by this to restore units
};

Nondimensional nondimensionalize(const EffectiveModel& m);

EffectiveModel reduce(const PhysicalParams& p);

// E_{1,2} = (Omega +- sqrt(Delta^2 - 4 Gamma^2)) / 2
std::pair<std::complex<double>, std::complex<double>> eigenvalues(const EffectiveModel& m);

// |E1 - E2|
double splitting(const EffectiveModel& m);

// |Delta / sqrt(Delta^2 - 4 Gamma^2)|; std::nullopt at the exceptional point,
// where it diverges.
std::optional<double> susceptibility(const EffectiveModel& m);

}  // namespace ptmag
