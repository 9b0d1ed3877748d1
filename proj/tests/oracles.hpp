#pragma once

// Reference computations that share no code with the library. Each one takes
// a different route to a quantity the library computes in closed form.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ptmag/dynamics.hpp"
#include "ptmag/model.hpp"

namespace oracle {

using cd = std::complex<double>;

// exp(-i H t) with H = [[omega1, -i Gamma], [-i Gamma, omega2]] by Pade scaling-and-squaring.
inline Eigen::Matrix2cd expm_propagator(const ptmag::EffectiveModel& m, double t) {
  Eigen::Matrix2cd h;
  h << m.omega1(), cd(0.0, -m.Gamma), cd(0.0, -m.Gamma), m.omega2();
  const Eigen::Matrix2cd k = cd(0.0, -t) * h;
  return k.exp();
}

// Photon-number variance of a single-mode Gaussian state from its phase-space
// covariance: Var(n) = Tr(s^2)/2 - 1/4 + d^T s d with x = (c + c^dag)/sqrt2,
// p = (c - c^dag)/(i sqrt2), vacuum s = I/2.
inline double phase_space_variance(double n, cd cc, cd c) {
  const double xx = 0.5 * (2.0 * cc.real() + 2.0 * n + 1.0);
  const double pp = 0.5 * (-2.0 * cc.real() + 2.0 * n + 1.0);
  const double xp = cc.imag();
  const Eigen::Vector2d d(std::sqrt(2.0) * c.real(), std::sqrt(2.0) * c.imag());
  Eigen::Matrix2d s;
  s << xx - d(0) * d(0), xp - d(0) * d(1), xp - d(0) * d(1), pp - d(1) * d(1);
  return 0.5 * (s * s).trace() - 0.25 + d.dot(s * d);
}

// Cavity moments c = -i sqrt(p) (a + b) straight from the two-mode moments.
inline double phase_space_variance(const ptmag::MomentState& ms, double prefactor) {
  const cd mode_mean = ms.mean.sum();
  const double n = prefactor * ms.N.sum().real();
  const cd cc = -prefactor * ms.M.sum();
  const cd c = cd(0.0, -std::sqrt(prefactor)) * mode_mean;
  return phase_space_variance(n, cc, c);
}

// Two-mode squeezed vacuum S(r) |00>: <a^dag a> = <b^dag b> = sinh^2 r, <ab> = sinh r cosh r.
inline ptmag::MomentState two_mode_squeezed(double r) {
  ptmag::MomentState ms;
  const double s = std::sinh(r), c = std::cosh(r);
  ms.N(0, 0) = ms.N(1, 1) = s * s;
  ms.M(0, 1) = ms.M(1, 0) = s * c;
  return ms;
}

// A random valid Gaussian two-mode moment state: thermal occupations, a
// random Bogoliubov-free mixing and displacement, built as U(thermal)U^dag.
inline ptmag::MomentState random_gaussian_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double n1 = 2.0 * u(rng), n2 = 2.0 * u(rng);
  const double theta = 2.0 * M_PI * u(rng), phi = 2.0 * M_PI * u(rng);
  Eigen::Matrix2cd bs;
  bs << std::cos(theta), -std::exp(cd(0.0, phi)) * std::sin(theta), std::exp(cd(0.0, -phi)) * std::sin(theta),
      std::cos(theta);
  // Single-mode squeezing on mode a with r and phase chi: a -> mu a + nu a^dag.
  const double r = 0.5 * u(rng), chi = 2.0 * M_PI * u(rng);
  const cd mu = std::cosh(r), nu = std::exp(cd(0.0, chi)) * std::sinh(r);
  // Start: thermal diag(n1, n2) + squeeze a, then mix, then displace.
  Eigen::Matrix2cd n0 = Eigen::Matrix2cd::Zero(), m0 = Eigen::Matrix2cd::Zero();
  n0(0, 0) = std::norm(mu) * n1 + std::norm(nu) * (n1 + 1.0);
  n0(1, 1) = n2;
  m0(0, 0) = mu * nu * (2.0 * n1 + 1.0);
  ptmag::MomentState ms;
  // x' = bs x: N' = conj(bs) N bs^T, M' = bs M bs^T.
  ms.N = bs.conjugate() * n0 * bs.transpose();
  ms.M = bs * m0 * bs.transpose();
  const ptmag::Vec2c alpha(cd(u(rng) - 0.5, u(rng) - 0.5), cd(u(rng) - 0.5, u(rng) - 0.5));
  ms.mean = alpha;
  ms.N += alpha.conjugate() * alpha.transpose();
  ms.M += alpha * alpha.transpose();
  return ms;
}

// Simpson integration of f over [0, t] with n (even) panels.
template <class F>
double simpson(F&& f, double t, int n = 2000) {
  const double h = t / n;
  double s = f(0.0) + f(t);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace oracle
