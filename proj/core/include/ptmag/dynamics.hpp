#pragma once

#include <complex>

#include <Eigen/Core>

#include "ptmag/model.hpp"

namespace ptmag {

using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

// W(t) = exp(-i H_PT t). Evaluated through the entire functions of
// (Delta^2 - 4 Gamma^2) t^2 / 4, so no branch of lambda is ever chosen.
struct Propagator {
  double t = 0.0;
  std::complex<double> w11{1.0, 0.0};
  std::complex<double> w12{0.0, 0.0};
  std::complex<double> w21{0.0, 0.0};
  std::complex<double> w22{1.0, 0.0};

  Mat2c matrix() const;
  std::complex<double> det() const { return w11 * w22 - w12 * w21; }
};

Propagator propagator(const EffectiveModel& m, double t);

struct InitialCondition {
  enum class Kind { Vacuum, Thermal, Fock };

  Kind kind = Kind::Vacuum;
  double temperature = 0.0;  // energy units, Boltzmann constant absorbed
  int n_a = 0;
  int n_b = 0;

  static InitialCondition vacuum() { return {}; }
  static InitialCondition thermal(double temperature);
  static InitialCondition fock(int n_a, int n_b);

  // (n1, n2) for the magnon frequencies of m. Thermal occupations are
  // 1 / (exp(omega_j / T) - 1); they need omega_j > 0 whenever T > 0.
  std::pair<double, double> occupations(const EffectiveModel& m) const;
  std::pair<double, double> occupations(double omega1, double omega2) const;
};

std::string_view to_string(InitialCondition::Kind kind);

// Raw (non-central) first and second moments of the two magnon modes.
//   N(i, j) = <x_i^dag x_j>,  M(i, j) = <x_i x_j>,  x = (a, b).
struct MomentState {
  double t = 0.0;
  Vec2c mean = Vec2c::Zero();
  Mat2c N = Mat2c::Zero();
  Mat2c M = Mat2c::Zero();

  static MomentState zero() { return {}; }
  // Largest deviation from N Hermitian and M symmetric.
  double symmetry_defect() const;
};

MomentState initial_moments(const EffectiveModel& m, const InitialCondition& init);

// Delta-correlated expectations of the effective noise xi = (A_in, B_in),
// derived from A_in = sqrt(2 gamma) a_in^dag + i sqrt(2 Gamma) c_in and its B
// partner sharing the same c_in:
//   normal(i, j)     = <xi_i^dag xi_j>   -> 2 gamma * I
//   antinormal(i, j) = <xi_i xi_j^dag>   -> 2 Gamma for every entry
//   anomalous(i, j)  = <xi_i xi_j>       -> 0
struct NoiseCorrelators {
  Mat2c normal;
  Mat2c antinormal;
  Mat2c anomalous;
};

NoiseCorrelators noise_correlators(const EffectiveModel& m);

// Drift matrix K = -i H_eff of d/dt (a, b) = K (a, b) - xi.
Mat2c drift_matrix(const EffectiveModel& m);

// Integral over [0, t] of conj(W(s)) W(s)^T, in closed form.
Mat2c noise_kernel(const EffectiveModel& m, double t);

// Moments after time dt starting from `start`. PT models only.
MomentState propagate_moments(const EffectiveModel& m, const MomentState& start, double dt);
MomentState evolve_moments(const EffectiveModel& m, const InitialCondition& init, double t);

// prefactor * <(a^dag + b^dag)(a + b)>
double photon_number(const MomentState& ms, double prefactor);

// Which occupation factor the thermal closed form multiplies (n1 + n2) by.
//   Printed:     t Delta^2/L^2 - 2 Gamma (1 - cos L t)/L^2 - 4 Gamma^2 sin(L t)/L^3,
//                the expression the reference thermal curves are drawn from.
//   MomentExact: |W11 + W12|^2 = (Delta^2 - 4 Gamma^2 cos L t)/L^2 - 2 Gamma sin(L t)/L,
//                which agrees with evolve_moments. Printed is its time integral.
enum class ThermalForm { Printed, MomentExact };

std::string_view to_string(ThermalForm form);

// Closed-form pieces of N_c / prefactor, with their Delta-derivatives.
struct ClosedFormTerms {
  double vacuum = 0.0;          // noise-driven part
  double thermal_factor = 0.0;  // multiplies (n1 + n2)
  double d_vacuum = 0.0;        // d/dDelta
  double d_thermal_factor = 0.0;
};

ClosedFormTerms closed_form_terms(const EffectiveModel& m, double t, ThermalForm form);

// N_c for Vacuum or Thermal input; throws std::invalid_argument for Fock input.
double photon_number_closed_form(const EffectiveModel& m, const InitialCondition& init, double t,
                                 ThermalForm form = ThermalForm::Printed);

// Same, with occupations given explicitly.
double photon_number_closed_form(const EffectiveModel& m, double n1, double n2, double t,
                                 ThermalForm form = ThermalForm::Printed);

}  // namespace ptmag
