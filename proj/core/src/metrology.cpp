#include "ptmag/metrology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace ptmag {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_closed_form_input(const InitialCondition& init) {
  if (init.kind == InitialCondition::Kind::Fock) {
    throw std::invalid_argument("photon-counting metrology covers vacuum and thermal inputs only");
  }
}

// dn/domega of 1/(exp(omega/T) - 1)
double occupation_slope(double n, double temperature) {
  if (temperature == 0.0) return 0.0;
  return -n * (n + 1.0) / temperature;
}

double closed_form_at(const EffectiveModel& m, const InitialCondition& init, double t,
                      const ThermalOptions& thermal, double omega1, double frozen_n1) {
  const EffectiveModel shifted = m.with_omega1(omega1);
  auto [n1, n2] = init.occupations(shifted);
  if (thermal.freeze_occupations && init.kind == InitialCondition::Kind::Thermal) n1 = frozen_n1;
  return photon_number_closed_form(shifted, n1, n2, t, thermal.form);
}

bool is_reliable(double derivative, double photons) {
  return std::isfinite(derivative) && std::isfinite(photons) && derivative != 0.0 &&
         std::abs(derivative) > kDerivativeFloor * photons;
}

}  // namespace

std::string describe_flags(std::uint32_t flags) {
  if (flags == kFlagNone) return "ok";
  std::string out;
  auto add = [&](std::uint32_t bit, const char* name) {
    if (flags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  };
  add(kFlagDerivativeUnreliable, "derivative-unreliable");
  add(kFlagNonFinite, "non-finite");
  add(kFlagEvaluationFailed, "failed");
  add(kFlagNearExceptionalPoint, "ep");
  return out;
}

CavityMoments cavity_moments(const MomentState& ms, double prefactor) {
  const std::complex<double> i{0.0, 1.0};
  CavityMoments c;
  c.photons = prefactor * ms.N.sum().real();
  // c = -i sqrt(p) (a + b): <cc> = -p <(a+b)^2>, <c> = -i sqrt(p) (<a> + <b>)
  c.pair = -prefactor * ms.M.sum();
  c.amplitude = -i * std::sqrt(prefactor) * ms.mean.sum();
  return c;
}

double photon_variance(const CavityMoments& c) {
  const double n = c.photons;
  const double amp2 = std::norm(c.amplitude);
  // <c^dag c c^dag c> = n^2 + n (n + 1) + |<cc>|^2 - 2 |<c>|^4
  return n * (1.0 + n) + std::norm(c.pair) - 2.0 * amp2 * amp2;
}

double photon_variance(const MomentState& ms, double prefactor) {
  return photon_variance(cavity_moments(ms, prefactor));
}

DerivativeResult dNc_domega1(const EffectiveModel& m, const InitialCondition& init, double t,
                             DerivativeMethod method, const ThermalOptions& thermal) {
  require_closed_form_input(init);
  const auto [n1, n2] = init.occupations(m);
  DerivativeResult r;
  r.photons = photon_number_closed_form(m, n1, n2, t, thermal.form);

  if (method.kind == DerivativeMethod::Kind::Analytic) {
    // N_c depends on omega1 through Delta (dDelta/domega1 = 1) and, for
    // thermal input, through n1(omega1 / T).
    const auto terms = closed_form_terms(m, t, thermal.form);
    double d = terms.d_vacuum + terms.d_thermal_factor * (n1 + n2);
    if (init.kind == InitialCondition::Kind::Thermal && !thermal.freeze_occupations) {
      d += terms.thermal_factor * occupation_slope(n1, init.temperature);
    }
    r.value = m.prefactor * d;
  } else {
    const double h = method.step;
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const double x = m.omega1();
    auto central = [&](double step) {
      return (closed_form_at(m, init, t, thermal, x + step, n1) - closed_form_at(m, init, t, thermal, x - step, n1)) /
             (2.0 * step);
    };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    r.value = (4.0 * fine - coarse) / 3.0;
  }
  r.reliable = is_reliable(r.value, r.photons);
  return r;
}

double gaussian_qfi(const Eigen::Matrix2d& cov, const Eigen::Matrix2d& d_cov, const Eigen::Vector2d& d_mean) {
  if (d_cov.isZero(0.0) && d_mean.isZero(0.0)) return 0.0;

  const Eigen::Matrix2d inv = cov.inverse();
  const Eigen::Matrix2d x = inv * d_cov;
  const double det = cov.determinant();
  const double purity = 1.0 / std::sqrt(det);
  const double d_det = det * x.trace();
  const double d_purity = -0.5 * purity / det * d_det;

  // 1 - P^4 = (det - 1)(det + 1) / det^2, with det - 1 = tr E + det E for cov = I + E.
  const Eigen::Matrix2d excess = cov - Eigen::Matrix2d::Identity();
  const double det_minus_one = excess.trace() + excess.determinant();

  const double covariance_term = 0.5 * (x * x).trace() / (1.0 + purity * purity);
  double purity_term = 0.0;
  if (d_purity != 0.0) {
    if (!(det_minus_one > 0.0)) return kInf;
    purity_term = 2.0 * d_purity * d_purity * det * det / (det_minus_one * (det + 1.0));
  }
  const double mean_term = d_mean.dot(inv * d_mean);
  return covariance_term + purity_term + mean_term;
}

QfiRoutes qfi_routes(const EffectiveModel& m, const InitialCondition& init, double t) {
  if (init.kind != InitialCondition::Kind::Vacuum) {
    throw std::invalid_argument("the Gaussian QFI with C = (1 + 2 N_c) I holds for vacuum input only");
  }
  const auto d = dNc_domega1(m, init, t);
  QfiRoutes q;
  q.photons = d.photons;
  q.derivative = d.value;

  const double eta = 1.0 + 2.0 * d.photons;
  const Eigen::Matrix2d cov = eta * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d d_cov = 2.0 * d.value * Eigen::Matrix2d::Identity();
  q.general = gaussian_qfi(cov, d_cov, Eigen::Vector2d::Zero());

  const double denom = d.photons * d.photons + d.photons;
  q.reduced = d.value == 0.0 ? 0.0 : d.value * d.value / denom;
  return q;
}

double qfi_gaussian(const EffectiveModel& m, const InitialCondition& init, double t) {
  return qfi_routes(m, init, t).general;
}

PrecisionResult precision_error_propagation(const EffectiveModel& m, const InitialCondition& init, double t,
                                            const MetrologyOptions& options) {
  require_closed_form_input(init);
  PrecisionResult r;
  r.omega1 = m.omega1();
  r.Delta = m.Delta;
  r.t = t;
  if (m.phase == Phase::ExceptionalPoint) r.flags |= kFlagNearExceptionalPoint;

  const auto d = dNc_domega1(m, init, t, options.derivative, options.thermal);
  r.photons = d.photons;
  r.dNc_domega1 = d.value;

  // Vacuum and thermal inputs evolve into zero-mean Gaussian states with <cc> = 0.
  CavityMoments cavity;
  cavity.photons = d.photons;
  r.variance_Nc = photon_variance(cavity);

  if (d.reliable) {
    r.delta2_omega1 = r.variance_Nc / (d.value * d.value);
  } else {
    r.flags |= kFlagDerivativeUnreliable;
    r.delta2_omega1 = kInf;
  }

  if (init.kind == InitialCondition::Kind::Vacuum) {
    const double eta = 1.0 + 2.0 * d.photons;
    r.qfi = gaussian_qfi(eta * Eigen::Matrix2d::Identity(), 2.0 * d.value * Eigen::Matrix2d::Identity(),
                         Eigen::Vector2d::Zero());
    r.crb = r.qfi > 0.0 ? 1.0 / r.qfi : kInf;
  } else {
    r.qfi = kNaN;
    r.crb = kNaN;
  }

  if (!std::isfinite(r.photons) || !std::isfinite(r.variance_Nc) || !std::isfinite(r.dNc_domega1)) {
    r.flags |= kFlagNonFinite;
  }
  return r;
}

}  // namespace ptmag
