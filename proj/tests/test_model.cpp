#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ptmag/model.hpp"

using namespace ptmag;

namespace {

PhysicalParams device(double g, double kappa, double gamma, double w1, double w2) {
  PhysicalParams p;
  p.omega1 = w1;
  p.omega2 = w2;
  p.g13 = p.g23 = g;
  p.kappa = kappa;
  p.gamma1 = p.gamma2 = gamma;
  return p;
}

}  // namespace

TEST(Reduce, FigureOneParametersSitAtExceptionalPoint) {
  const auto m = reduce(device(10, 100, 1, 3, 1));
  EXPECT_DOUBLE_EQ(m.Gamma, 1.0);
  EXPECT_DOUBLE_EQ(m.Delta, 2.0);
  EXPECT_DOUBLE_EQ(m.Omega, 4.0);
  EXPECT_DOUBLE_EQ(m.prefactor, 0.01);
  EXPECT_EQ(m.phase, Phase::ExceptionalPoint);
  EXPECT_FALSE(m.pt_warning);
}

TEST(Reduce, DecoupledLimit) {
  const auto m = reduce(device(0, 100, 0, 2, 1));
  EXPECT_EQ(m.Gamma, 0.0);
  EXPECT_EQ(m.phase, Phase::PTExact);
  EXPECT_FALSE(m.pt_warning);
}

TEST(Reduce, DeviceRates) {
  const double two_pi = 2 * M_PI;
  const auto m = reduce(device(two_pi * 10e6, two_pi * 100e6, two_pi * 1e6, two_pi * 1e6, -two_pi * 1e6));
  EXPECT_NEAR(m.Gamma / (two_pi * 1e6), 1.0, 1e-14);
  EXPECT_EQ(m.phase, Phase::ExceptionalPoint);
}

TEST(Reduce, RejectsInvalidAndAsymmetric) {
  EXPECT_THROW(reduce(device(1, 0, 0, 0, 0)), std::invalid_argument);
  EXPECT_THROW(reduce(device(1, -1, 0, 0, 0)), std::invalid_argument);
  auto p = device(10, 100, 1, 0, 0);
  p.g23 = 9;
  EXPECT_THROW(reduce(p), std::invalid_argument);
  p = device(10, 100, 1, 0, 0);
  p.gamma2 = 2;
  EXPECT_THROW(reduce(p), std::invalid_argument);
}

TEST(Reduce, FlagsUnbalancedGain) {
  EXPECT_TRUE(reduce(device(10, 100, 0.5, 0, 0)).pt_warning);
  EXPECT_TRUE(reduce(device(10, 100, 1.0, 0, 0)).is_pt());
}

TEST(Reduce, AdiabaticFlag) {
  EXPECT_TRUE(device(10, 100, 1, 0, 0).adiabatic_valid());
  auto p = device(10, 100, 1, 0, 0);
  p.omega3 = 20;
  EXPECT_FALSE(p.adiabatic_valid());
}

TEST(Reduce, ScaleCovariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = device(u(rng), 10 * u(rng) + 5, u(rng), u(rng), -u(rng));
    const double s = u(rng);
    const auto a = reduce(p), b = reduce(p.scaled(s));
    EXPECT_NEAR(b.Gamma, s * a.Gamma, 1e-12 * b.Gamma);
    EXPECT_NEAR(b.Omega, s * a.Omega, 1e-12 * std::abs(b.Omega) + 1e-15);
    EXPECT_NEAR(b.Delta, s * a.Delta, 1e-12 * std::abs(b.Delta));
    EXPECT_NEAR(b.prefactor, a.prefactor, 1e-14 * a.prefactor);
    EXPECT_EQ(b.phase, a.phase);
  }
}

TEST(Classify, BandAroundExceptionalPoint) {
  EXPECT_EQ(classify(2.0, 1.0), Phase::ExceptionalPoint);
  EXPECT_EQ(classify(2.0 * (1 + 5e-10), 1.0), Phase::ExceptionalPoint);
  EXPECT_EQ(classify(2.0 * (1 + 2e-9), 1.0), Phase::PTExact);
  EXPECT_EQ(classify(-3.0, 1.0), Phase::PTExact);
  EXPECT_EQ(classify(1.0, 1.0), Phase::Broken);
  EXPECT_EQ(classify(0.0, 0.0), Phase::ExceptionalPoint);
}

TEST(Eigenvalues, Examples) {
  auto [e1, e2] = eigenvalues(EffectiveModel::pt(3.5, 0.5, 1.0, 0.01));  // Omega 4, Delta 3
  EXPECT_NEAR(e1.real(), (4 + std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(e2.real(), (4 - std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_EQ(e1.imag(), 0.0);

  std::tie(e1, e2) = eigenvalues(EffectiveModel::pt(0.0, 0.0, 1.0, 0.01));
  EXPECT_NEAR(std::abs(e1 - std::complex<double>(0, 1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e2 - std::complex<double>(0, -1)), 0.0, 1e-14);

  std::tie(e1, e2) = eigenvalues(EffectiveModel::pt(3.0, 1.0, 1.0, 0.01));
  EXPECT_EQ(e1, e2);
  EXPECT_DOUBLE_EQ(e1.real(), 2.0);
}

TEST(Splitting, ExamplesAndConsistency) {
  EXPECT_EQ(splitting(EffectiveModel::pt(3.0, 1.0, 1.0, 0.01)), 0.0);
  EXPECT_NEAR(splitting(EffectiveModel::pt(4.0, 1.0, 1.0, 0.01)), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(splitting(EffectiveModel::pt(1.0, 1.0, 1.0, 0.01)), 2.0, 1e-14);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const auto m = EffectiveModel::pt(u(rng), u(rng), std::abs(u(rng)), 0.01);
    const auto [e1, e2] = eigenvalues(m);
    const double s = splitting(m);
    EXPECT_GE(s, 0.0);
    EXPECT_NEAR(s, std::abs(e1 - e2), 1e-12 * std::max(1.0, s));
  }
}

TEST(Susceptibility, ExamplesAndEpDivergence) {
  EXPECT_NEAR(*susceptibility(EffectiveModel::pt(4.0, 1.0, 1.0, 0.01)), 3 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(*susceptibility(EffectiveModel::pt(101.0, 1.0, 1.0, 0.01)), 1.0002, 1e-4);
  EXPECT_FALSE(susceptibility(EffectiveModel::pt(3.0, 1.0, 1.0, 0.01)).has_value());
}

TEST(Susceptibility, InverseSquareRootExponentNearEp) {
  // Least-squares slope of log chi against log(Delta - 2) on a log grid close to the EP.
  std::vector<double> xs, ys;
  for (int k = 0; k < 20; ++k) {
    const double eps = 1e-6 * std::pow(10.0, 4.0 * k / 19.0);
    const auto chi = susceptibility(EffectiveModel::pt(1.0 + 2.0 + eps, 1.0, 1.0, 0.01));
    xs.push_back(std::log(eps));
    ys.push_back(std::log(*chi));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  EXPECT_NEAR(sxy / sxx, -0.5, 0.025);

  const double near = *susceptibility(EffectiveModel::pt(3.02, 1.0, 1.0, 0.01));
  const double far = *susceptibility(EffectiveModel::pt(3.04, 1.0, 1.0, 0.01));
  const double expect = (2.02 / std::sqrt(2.02 * 2.02 - 4.0)) / (2.04 / std::sqrt(2.04 * 2.04 - 4.0));
  EXPECT_NEAR(near / far, expect, 1e-9);
}

TEST(Susceptibility, MonotoneOutsideEp) {
  double prev = INFINITY;
  for (double d = 2.001; d < 50; d *= 1.1) {
    const double chi = *susceptibility(EffectiveModel::pt(1.0 + d, 1.0, 1.0, 0.01));
    EXPECT_LT(chi, prev);
    EXPECT_GE(chi, 1.0);
    prev = chi;
  }
}

TEST(Nondimensionalize, RoundTrip) {
  const auto m = EffectiveModel::pt(7.3, -2.1, 2.5, 0.02);
  const auto nd = nondimensionalize(m);
  EXPECT_DOUBLE_EQ(nd.model.Gamma, 1.0);
  EXPECT_EQ(nd.rate_unit, 2.5);
  const auto back = nd.model.scaled(nd.rate_unit);
  EXPECT_NEAR(back.Omega, m.Omega, 1e-14 * std::abs(m.Omega));
  EXPECT_NEAR(back.Delta, m.Delta, 1e-14 * std::abs(m.Delta));
  EXPECT_THROW(nondimensionalize(EffectiveModel::pt(1, 0, 0, 0.01)), std::invalid_argument);
}

TEST(EffectiveModel, WithOmega1Reclassifies) {
  const auto m = EffectiveModel::pt(4.0, 1.0, 1.0, 0.01);
  const auto e = m.with_omega1(3.0);
  EXPECT_EQ(e.phase, Phase::ExceptionalPoint);
  EXPECT_DOUBLE_EQ(e.omega2(), 1.0);
  EXPECT_DOUBLE_EQ(e.omega1(), 3.0);
}
