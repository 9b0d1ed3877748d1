#include "ptmag/entanglement.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "ptmag/special.hpp"

namespace ptmag {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Negative discriminant D^2 - 4 det V still attributed to rounding, relative
// to max|V_ij|^4. Both terms are quartic in V and D itself can cancel, so
// scaling by D^2 is too tight for strongly amplified states. Vacuum evolution
// gives an exactly degenerate spectrum, so this clamp is hit routinely.
constexpr double kDiscriminantSlack = 1e-12;

}  // namespace

QuadratureCovariance quadrature_covariance(const MomentState& ms) {
  // Raw second moments of xi = (a, a^dag, b, b^dag).
  Eigen::Matrix4cd g;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const double delta = j == k ? 1.0 : 0.0;
      g(2 * j, 2 * k) = ms.M(j, k);
      g(2 * j + 1, 2 * k + 1) = std::conj(ms.M(j, k));
      g(2 * j + 1, 2 * k) = ms.N(j, k);
      g(2 * j, 2 * k + 1) = ms.N(k, j) + delta;
    }
  }
  Eigen::Vector4cd mean_xi;
  mean_xi << ms.mean(0), std::conj(ms.mean(0)), ms.mean(1), std::conj(ms.mean(1));

  // U = L xi
  Eigen::Matrix4cd l = Eigen::Matrix4cd::Zero();
  for (int j = 0; j < 2; ++j) {
    l(2 * j, 2 * j) = 1.0;
    l(2 * j, 2 * j + 1) = 1.0;
    l(2 * j + 1, 2 * j) = -kI;
    l(2 * j + 1, 2 * j + 1) = kI;
  }
  const Eigen::Matrix4cd s = l * g * l.transpose();
  const Eigen::Vector4d mean_u = (l * mean_xi).real();

  QuadratureCovariance cov;
  cov.V = (0.5 * (s + s.transpose())).real() - mean_u * mean_u.transpose();
  return cov;
}

double QuadratureCovariance::physicality_margin() const {
  Eigen::Matrix4cd h = V.cast<cd>();
  for (int j = 0; j < 2; ++j) {
    h(2 * j, 2 * j + 1) += kI;
    h(2 * j + 1, 2 * j) -= kI;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool QuadratureCovariance::physical(double tol) const {
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  return physicality_margin() >= -tol * scale;
}

double nu_minus(const QuadratureCovariance& cov) {
  const double tilde = cov.A().determinant() + cov.B().determinant() - 2.0 * cov.C().determinant();
  const double det_v = cov.V.determinant();
  double disc = tilde * tilde - 4.0 * det_v;
  if (disc < 0.0) {
    const double scale = std::pow(cov.V.cwiseAbs().maxCoeff(), 4);
    if (disc < -kDiscriminantSlack * scale) {
      throw InvalidRegime("partially transposed symplectic spectrum is complex");
    }
    disc = 0.0;
  }
  const double nu2 = 0.5 * (tilde - std::sqrt(disc));
  if (!(nu2 >= 0.0)) throw InvalidRegime("negative squared symplectic eigenvalue");
  return std::sqrt(nu2);
}

double log_negativity_from_nu(double nu) {
  return nu >= 1.0 ? 0.0 : -std::log(nu);
}

double log_negativity(const QuadratureCovariance& cov) {
  return log_negativity_from_nu(nu_minus(cov));
}

NuMinusReport nu_minus_closed_form_check(const EffectiveModel& m, double t) {
  NuMinusReport r;
  r.t = t;
  r.direct = nu_minus(quadrature_covariance(evolve_moments(m, InitialCondition::vacuum(), t)));
  r.direct_squared = r.direct * r.direct;

  // 4 Gamma t Delta^2/L^2 - 16 Gamma^3 sin(L t)/L^3 = 4 Gamma t + 16 Gamma^3 t^3 b(z)
  // (1 - cos L t)/L^2 = t^2 a(z), with z = L^2 t^2.
  const auto e = special::entire_set(m.gap() * t * t);
  const double g = m.Gamma;
  const double first = 1.0 + 4.0 * g * t + 16.0 * g * g * g * t * t * t * e.sine_defect;
  const double second = g * g * t * t * e.versine;
  r.printed = first * first - 32.0 * second * second;

  r.ratio_to_square = r.printed / r.direct_squared;
  r.difference_to_square = r.printed - r.direct_squared;
  const auto side = [](double x) { return (x > 1.0) - (x < 1.0); };
  r.same_side_of_one = side(r.printed) == side(r.direct_squared);
  return r;
}

double hz_witness(const MomentState& ms) {
  return std::norm(ms.M(0, 1)) - ms.N(0, 0).real() * ms.N(1, 1).real();
}

std::vector<EntanglementRow> entanglement_sweep(const EffectiveModel& m, const InitialCondition& init,
                                                std::span<const double> times) {
  std::vector<EntanglementRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    const auto ms = evolve_moments(m, init, t);
    EntanglementRow row;
    row.t = t;
    row.nu_minus = nu_minus(quadrature_covariance(ms));
    row.log_negativity = log_negativity_from_nu(row.nu_minus);
    row.hz_witness = hz_witness(ms);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ptmag
