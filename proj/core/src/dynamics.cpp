#include "ptmag/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ptmag/special.hpp"

namespace ptmag {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
}

void require_pt(const EffectiveModel& m) {
  if (!m.is_pt()) {
    throw std::invalid_argument("model is not PT-balanced (gain != Gamma); only the gain = Gamma path is supported");
  }
}

}  // namespace

Mat2c Propagator::matrix() const {
  Mat2c w;
  w << w11, w12, w21, w22;
  return w;
}

Propagator propagator(const EffectiveModel& m, double t) {
  require_time(t);
  // cosh(lambda t/2) = cos_root(z), sinh(lambda t/2)/lambda = (t/2) sinc_root(z)
  // with z = -lambda^2 t^2 / 4 = (Delta^2 - 4 Gamma^2) t^2 / 4.
  const auto e = special::entire_set(m.gap() * t * t / 4.0);
  const double c = e.cos_root;
  const double s = 0.5 * t * e.sinc_root;
  const std::complex<double> phase = std::exp(-kI * (0.5 * m.Omega * t));

  Propagator w;
  w.t = t;
  w.w11 = phase * (c - kI * m.Delta * s);
  w.w22 = phase * (c + kI * m.Delta * s);
  w.w12 = phase * (-2.0 * m.Gamma * s);
  w.w21 = w.w12;
  return w;
}

InitialCondition InitialCondition::thermal(double temperature) {
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
  InitialCondition ic;
  ic.kind = Kind::Thermal;
  ic.temperature = temperature;
  return ic;
}

InitialCondition InitialCondition::fock(int n_a, int n_b) {
  if (n_a < 0 || n_b < 0) throw std::invalid_argument("Fock occupations must be non-negative");
  InitialCondition ic;
  ic.kind = Kind::Fock;
  ic.n_a = n_a;
  ic.n_b = n_b;
  return ic;
}

std::pair<double, double> InitialCondition::occupations(const EffectiveModel& m) const {
  return occupations(m.omega1(), m.omega2());
}

std::pair<double, double> InitialCondition::occupations(double omega1, double omega2) const {
  switch (kind) {
    case Kind::Vacuum:
      return {0.0, 0.0};
    case Kind::Fock:
      return {static_cast<double>(n_a), static_cast<double>(n_b)};
    case Kind::Thermal: {
      if (temperature == 0.0) return {0.0, 0.0};
      if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
        throw std::invalid_argument("thermal occupations need positive magnon frequencies");
      }
      return {1.0 / std::expm1(omega1 / temperature), 1.0 / std::expm1(omega2 / temperature)};
    }
  }
  return {0.0, 0.0};
}

std::string_view to_string(InitialCondition::Kind kind) {
  switch (kind) {
    case InitialCondition::Kind::Vacuum: return "vacuum";
    case InitialCondition::Kind::Thermal: return "thermal";
    case InitialCondition::Kind::Fock: return "fock";
  }
  return "unknown";
}

double MomentState::symmetry_defect() const {
  return std::max((N - N.adjoint()).cwiseAbs().maxCoeff(), (M - M.transpose()).cwiseAbs().maxCoeff());
}

MomentState initial_moments(const EffectiveModel& m, const InitialCondition& init) {
  const auto [n1, n2] = init.occupations(m);
  MomentState ms;
  ms.N(0, 0) = n1;
  ms.N(1, 1) = n2;
  return ms;
}

NoiseCorrelators noise_correlators(const EffectiveModel& m) {
  NoiseCorrelators nc;
  nc.normal = 2.0 * m.gain * Mat2c::Identity();
  nc.antinormal = Mat2c::Constant(2.0 * m.Gamma);
  nc.anomalous = Mat2c::Zero();
  return nc;
}

Mat2c drift_matrix(const EffectiveModel& m) {
  const double loss_gain = m.gain - m.Gamma;
  Mat2c h;
  h << m.omega1() + kI * loss_gain, -kI * m.Gamma,
       -kI * m.Gamma, m.omega2() + kI * loss_gain;
  return -kI * h;
}

Mat2c noise_kernel(const EffectiveModel& m, double t) {
  require_time(t);
  // conj(W) W^T = c^2 + (Delta^2 + 4 Gamma^2) s^2 on the diagonal and
  // -4 Gamma (c s -+ i Delta s^2) off it, with c = cos(L s/2), s = sin(L s/2)/L.
  const auto e = special::entire_set(m.gap() * t * t);
  const double d = m.Delta;
  const double g = m.Gamma;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double diag = 0.5 * t * (1.0 + e.sinc_root) + 0.5 * (d * d + 4.0 * g * g) * t3 * e.sine_defect;
  const std::complex<double> off = -2.0 * g * t2 * e.versine - kI * (2.0 * g * d * t3 * e.sine_defect);
  Mat2c j;
  j << diag, off, std::conj(off), diag;
  return j;
}

MomentState propagate_moments(const EffectiveModel& m, const MomentState& start, double dt) {
  require_time(dt);
  require_pt(m);
  const Mat2c w = propagator(m, dt).matrix();
  MomentState out;
  out.t = start.t + dt;
  out.mean = w * start.mean;
  out.N = w.conjugate() * start.N * w.transpose() + (2.0 * m.gain) * noise_kernel(m, dt);
  out.M = w * start.M * w.transpose();
  return out;
}

MomentState evolve_moments(const EffectiveModel& m, const InitialCondition& init, double t) {
  require_time(t);
  return propagate_moments(m, initial_moments(m, init), t);
}

double photon_number(const MomentState& ms, double prefactor) {
  return prefactor * ms.N.sum().real();
}

std::string_view to_string(ThermalForm form) {
  return form == ThermalForm::Printed ? "printed" : "moment-exact";
}

ClosedFormTerms closed_form_terms(const EffectiveModel& m, double t, ThermalForm form) {
  require_time(t);
  const auto e = special::entire_set(m.gap() * t * t);
  const double g = m.Gamma;
  const double g2 = g * g;
  const double g3 = g2 * g;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double t5 = t4 * t;
  // dz/dDelta = 2 Delta t^2
  const double chain = 2.0 * m.Delta;

  ClosedFormTerms terms;
  terms.vacuum = 4.0 * g * t + 16.0 * g3 * t3 * e.sine_defect - 8.0 * g2 * t2 * e.versine;
  terms.d_vacuum = chain * (16.0 * g3 * t5 * e.d_sine_defect - 8.0 * g2 * t4 * e.d_versine);
  if (form == ThermalForm::Printed) {
    terms.thermal_factor = t + 4.0 * g2 * t3 * e.sine_defect - 2.0 * g * t2 * e.versine;
    terms.d_thermal_factor = chain * (4.0 * g2 * t5 * e.d_sine_defect - 2.0 * g * t4 * e.d_versine);
  } else {
    terms.thermal_factor = 1.0 + 4.0 * g2 * t2 * e.versine - 2.0 * g * t * e.sinc_root;
    terms.d_thermal_factor = chain * (4.0 * g2 * t4 * e.d_versine - 2.0 * g * t3 * e.d_sinc_root);
  }
  return terms;
}

double photon_number_closed_form(const EffectiveModel& m, double n1, double n2, double t, ThermalForm form) {
  require_pt(m);
  const auto terms = closed_form_terms(m, t, form);
  return m.prefactor * (terms.vacuum + terms.thermal_factor * (n1 + n2));
}

double photon_number_closed_form(const EffectiveModel& m, const InitialCondition& init, double t, ThermalForm form) {
  if (init.kind == InitialCondition::Kind::Fock) {
    throw std::invalid_argument("closed-form photon number covers vacuum and thermal inputs only");
  }
  const auto [n1, n2] = init.occupations(m);
  return photon_number_closed_form(m, n1, n2, t, form);
}

}  // namespace ptmag
