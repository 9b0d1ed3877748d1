#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ptmag/metrology.hpp"

using namespace ptmag;
using cd = std::complex<double>;

TEST(PhotonVariance, TrivialValues) {
  EXPECT_EQ(photon_variance(CavityMoments{}), 0.0);
  EXPECT_DOUBLE_EQ(photon_variance(CavityMoments{1.0, 0.0, 0.0}), 2.0);
}

TEST(PhotonVariance, VacuumIdentityOnRandomDraws) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto m = EffectiveModel::pt(1.0 + 4.0 * u(rng), 1.0, 0.2 + u(rng), 0.01 + 0.05 * u(rng));
    const auto ms = evolve_moments(m, InitialCondition::vacuum(), 5.0 * u(rng));
    const double n = photon_number(ms, m.prefactor);
    EXPECT_LE(oracle::rel(photon_variance(ms, m.prefactor), n * (1 + n)), 1e-10);
  }
}

TEST(PhotonVariance, MatchesPhaseSpaceOracle) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto m = EffectiveModel::pt(1.0 + 4.0 * u(rng), 1.0, 0.2 + u(rng), 0.01);
    const auto ms = evolve_moments(m, InitialCondition::thermal(0.2 + 3.0 * u(rng)), 5.0 * u(rng));
    EXPECT_LE(oracle::rel(photon_variance(ms, m.prefactor), oracle::phase_space_variance(ms, m.prefactor)), 1e-8);
  }
  // Displaced, squeezed, mixed Gaussian states exercise every decoupling term.
  for (int i = 0; i < 300; ++i) {
    const auto ms = oracle::random_gaussian_state(rng);
    const double p = 0.1 + u(rng);
    EXPECT_LE(oracle::rel(photon_variance(ms, p), oracle::phase_space_variance(ms, p)), 1e-8);
  }
}

TEST(Derivative, AnalyticMatchesRichardson) {
  const auto m = EffectiveModel::pt(4.0, 1.0, 1.0, 0.01);
  const auto a = dNc_domega1(m, InitialCondition::vacuum(), 10.0);
  const auto f = dNc_domega1(m, InitialCondition::vacuum(), 10.0, DerivativeMethod::finite_difference(1e-5));
  EXPECT_LT(oracle::rel(a.value, f.value), 1e-6);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double delta = 4.0 * u(rng);
    if (std::abs(delta - 2.0) < 0.05 || delta < 0.05) continue;
    const auto mm = EffectiveModel::pt(1.0 + delta, 1.0, 1.0, 0.01);
    const double t = 0.2 + 5.0 * u(rng);
    for (const auto& init : {InitialCondition::vacuum(), InitialCondition::thermal(0.5 + u(rng))}) {
      for (bool frozen : {false, true}) {
        ThermalOptions opts;
        opts.freeze_occupations = frozen;
        opts.form = i % 2 ? ThermalForm::Printed : ThermalForm::MomentExact;
        const auto an = dNc_domega1(mm, init, t, DerivativeMethod::analytic(), opts);
        const auto fd = dNc_domega1(mm, init, t, DerivativeMethod::finite_difference(1e-4), opts);
        EXPECT_LT(oracle::rel(an.value, fd.value), 1e-6) << delta << " " << t;
      }
    }
  }
}

TEST(Derivative, OccupationTermMatchesChainRule) {
  const auto m = EffectiveModel::pt(4.0, 1.0, 1.0, 0.01);
  const double temp = 1.0;
  ThermalOptions full, frozen;
  frozen.freeze_occupations = true;
  const auto init = InitialCondition::thermal(temp);
  const double d_full = dNc_domega1(m, init, 5.0, {}, full).value;
  const double d_frozen = dNc_domega1(m, init, 5.0, {}, frozen).value;
  const double n1 = 1.0 / std::expm1(4.0 / temp);
  const double factor = m.prefactor * closed_form_terms(m, 5.0, ThermalForm::Printed).thermal_factor;
  EXPECT_NEAR(d_full - d_frozen, factor * (-n1 * (n1 + 1) / temp), 1e-12);
}

TEST(Derivative, SymmetricPointAndDecoupledLimit) {
  const auto sym = dNc_domega1(EffectiveModel::pt(1.0, 1.0, 1.0, 0.01), InitialCondition::vacuum(), 2.0);
  EXPECT_NEAR(sym.value, 0.0, 1e-15);
  EXPECT_FALSE(sym.reliable);
  const auto dec = dNc_domega1(EffectiveModel::pt(3.0, 1.0, 0.0, 0.01), InitialCondition::vacuum(), 2.0);
  EXPECT_EQ(dec.value, 0.0);
  EXPECT_FALSE(dec.reliable);
}

TEST(Precision, FlagsDivergence) {
  const auto r = precision_error_propagation(EffectiveModel::pt(3.0, 1.0, 0.0, 0.01), InitialCondition::vacuum(), 2.0);
  EXPECT_TRUE(r.flags & kFlagDerivativeUnreliable);
  EXPECT_TRUE(std::isinf(r.delta2_omega1));
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(precision_error_propagation(EffectiveModel::pt(3.0, 1.0, 1.0, 0.01), InitialCondition::fock(0, 1), 1.0),
               std::invalid_argument);
}

TEST(Precision, CramerRaoSaturatedForVacuum) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto m = EffectiveModel::pt(1.0 + 0.1 + 3.9 * u(rng), 1.0, 0.3 + u(rng), 0.01);
    const auto r = precision_error_propagation(m, InitialCondition::vacuum(), 0.1 + 5.0 * u(rng));
    ASSERT_TRUE(r.ok());
    EXPECT_LE(oracle::rel(r.crb, r.delta2_omega1), 1e-10);
    EXPECT_LE(oracle::rel(r.qfi * r.delta2_omega1, 1.0), 1e-10);
  }
}

TEST(Precision, ThermalHasNoQfi) {
  const auto r = precision_error_propagation(EffectiveModel::pt(4.0, 1.0, 1.0, 0.01), InitialCondition::thermal(1.0), 5.0);
  EXPECT_TRUE(std::isnan(r.qfi));
  EXPECT_TRUE(r.ok());
}

TEST(Precision, ScaleCovariance) {
  // Gamma, Delta -> s Gamma, s Delta and t -> t / s multiplies delta^2 omega1 by s^2.
  const auto m = EffectiveModel::pt(3.7, 1.0, 1.0, 0.01);
  const auto base = precision_error_propagation(m, InitialCondition::vacuum(), 4.0);
  for (double s : {0.1, 3.0, 250.0}) {
    const auto r = precision_error_propagation(m.scaled(s), InitialCondition::vacuum(), 4.0 / s);
    EXPECT_LE(oracle::rel(r.delta2_omega1, s * s * base.delta2_omega1), 1e-10);
  }
}

TEST(Qfi, RoutesAgree) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto m = EffectiveModel::pt(1.0 + 4.0 * u(rng), 1.0, 0.2 + u(rng), 0.01);
    const auto q = qfi_routes(m, InitialCondition::vacuum(), 0.05 + 5.0 * u(rng));
    EXPECT_LE(oracle::rel(q.general, q.reduced), 1e-10);
    EXPECT_NEAR(q.reduced, q.derivative * q.derivative / (q.photons * (q.photons + 1)), 1e-12 * q.reduced);
  }
  EXPECT_THROW(qfi_routes(EffectiveModel::pt(4, 1, 1, 0.01), InitialCondition::thermal(1.0), 1.0),
               std::invalid_argument);
}

TEST(Qfi, ZeroAtZeroTime) {
  EXPECT_EQ(qfi_gaussian(EffectiveModel::pt(4, 1, 1, 0.01), InitialCondition::vacuum(), 0.0), 0.0);
}

TEST(Qfi, GaussianFormulaCoherentState) {
  // Displacement-only dependence: F = 4 |d alpha|^2 = R'^T C^-1 R' with C = I.
  const Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d d_mean(2.0 * 0.3, 2.0 * 0.4);
  EXPECT_NEAR(gaussian_qfi(cov, Eigen::Matrix2d::Zero(), d_mean), 4.0 * 0.25, 1e-14);
}

TEST(Flags, Describe) {
  EXPECT_EQ(describe_flags(kFlagNone), "ok");
  EXPECT_EQ(describe_flags(kFlagDerivativeUnreliable | kFlagNearExceptionalPoint), "derivative-unreliable|ep");
}
