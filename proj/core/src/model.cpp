#include "ptmag/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ptmag {
namespace {

bool nearly_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (g13 < 0.0 || g23 < 0.0) throw std::invalid_argument("couplings must be non-negative");
  if (gamma1 < 0.0 || gamma2 < 0.0) throw std::invalid_argument("gain rates must be non-negative");
}

bool PhysicalParams::adiabatic_valid() const {
  return kappa >= kAdiabaticRatio * std::max({std::abs(omega3), gamma1, gamma2});
}

PhysicalParams PhysicalParams::scaled(double s) const {
  return {omega1 * s, omega2 * s, omega3 * s, g13 * s, g23 * s, gamma1 * s, gamma2 * s, kappa * s};
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::PTExact: return "pt-exact";
    case Phase::Broken: return "broken";
    case Phase::ExceptionalPoint: return "exceptional-point";
  }
  return "unknown";
}

Phase classify(double delta, double gamma_c) {
  const double d = std::abs(delta);
  const double edge = 2.0 * gamma_c;
  if (d > edge * (1.0 + kExceptionalPointBand)) return Phase::PTExact;
  if (d < edge * (1.0 - kExceptionalPointBand)) return Phase::Broken;
  return Phase::ExceptionalPoint;
}

EffectiveModel EffectiveModel::pt(double omega1, double omega2, double Gamma, double prefactor) {
  if (Gamma < 0.0) throw std::invalid_argument("Gamma must be non-negative");
  if (prefactor < 0.0) throw std::invalid_argument("prefactor must be non-negative");
  EffectiveModel m;
  m.Omega = omega1 + omega2;
  m.Delta = omega1 - omega2;
  m.Gamma = Gamma;
  m.gain = Gamma;
  m.prefactor = prefactor;
  m.phase = classify(m.Delta, Gamma);
  m.pt_warning = false;
  return m;
}

double EffectiveModel::gap() const {
  if (phase == Phase::ExceptionalPoint) return 0.0;
  const double d = std::abs(Delta);
  return (d - 2.0 * Gamma) * (d + 2.0 * Gamma);
}

std::complex<double> EffectiveModel::lambda() const {
  return std::sqrt(std::complex<double>(-gap(), 0.0));
}

std::complex<double> EffectiveModel::Lambda() const {
  return std::sqrt(std::complex<double>(gap(), 0.0));
}

EffectiveModel EffectiveModel::with_omega1(double omega1_new) const {
  EffectiveModel m = *this;
  const double w2 = omega2();
  m.Omega = omega1_new + w2;
  m.Delta = omega1_new - w2;
  m.phase = classify(m.Delta, m.Gamma);
  return m;
}

EffectiveModel EffectiveModel::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
  EffectiveModel m = *this;
  m.Omega *= s;
  m.Delta *= s;
  m.Gamma *= s;
  m.gain *= s;
  return m;
}

Nondimensional nondimensionalize(const EffectiveModel& m) {
  if (!(m.Gamma > 0.0)) throw std::invalid_argument("cannot nondimensionalize a model with Gamma = 0");
  return {m.scaled(1.0 / m.Gamma), m.Gamma};
}

EffectiveModel reduce(const PhysicalParams& p) {
  p.validate();
  if (!nearly_equal(p.g13, p.g23, 1e-12)) {
    throw std::invalid_argument("asymmetric couplings g13 != g23 are not supported");
  }
  if (!nearly_equal(p.gamma1, p.gamma2, 1e-12)) {
    throw std::invalid_argument("asymmetric gains gamma1 != gamma2 are not supported");
  }
  const double g = p.g13;
  EffectiveModel m;
  m.Omega = p.omega1 + p.omega2;
  m.Delta = p.omega1 - p.omega2;
  m.Gamma = g * g / p.kappa;
  m.gain = p.gamma1;
  m.prefactor = (g / p.kappa) * (g / p.kappa);
  m.phase = classify(m.Delta, m.Gamma);
  m.pt_warning = !nearly_equal(m.gain, m.Gamma, kBalanceTolerance);
  return m;
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues(const EffectiveModel& m) {
  const std::complex<double> root = m.Lambda();
  return {0.5 * (m.Omega + root), 0.5 * (m.Omega - root)};
}

double splitting(const EffectiveModel& m) {
  return std::sqrt(std::abs(m.gap()));
}

std::optional<double> susceptibility(const EffectiveModel& m) {
  if (m.phase == Phase::ExceptionalPoint) return std::nullopt;
  return std::abs(m.Delta) / std::sqrt(std::abs(m.gap()));
}

}  // namespace ptmag
