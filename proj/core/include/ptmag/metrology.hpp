#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "ptmag/dynamics.hpp"
#include "ptmag/model.hpp"

namespace ptmag {

// Row and result flags. Flagged points stay in tables with +inf/NaN values.
enum PrecisionFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagDerivativeUnreliable = 1u << 0,  // |dN_c/domega1| below kDerivativeFloor * N_c
  kFlagNonFinite = 1u << 1,             // overflow or NaN in an intermediate
  kFlagEvaluationFailed = 1u << 2,      // the point threw; see SweepRow::error
  kFlagNearExceptionalPoint = 1u << 3,  // evaluated on the exceptional-point branch
};

std::string describe_flags(std::uint32_t flags);

inline constexpr double kDerivativeFloor = 1e-14;

// Single-mode moments of the cavity field c ~ -i sqrt(prefactor) (a + b).
struct CavityMoments {
  double photons = 0.0;                      // <c^dag c>
  std::complex<double> pair{0.0, 0.0};       // <c c>
  std::complex<double> amplitude{0.0, 0.0};  // <c>
};

CavityMoments cavity_moments(const MomentState& ms, double prefactor);

// Var(c^dag c) from the four-operator decoupling
//   <ABCD> = <AB><CD> + <AD><BC> + <AC><BD> - 2<A><B><C><D>
// with <c c^dag> = <c^dag c> + 1. Reduces to N_c (1 + N_c) for vacuum input.
double photon_variance(const CavityMoments& c);
double photon_variance(const MomentState& ms, double prefactor);

struct ThermalOptions {
  ThermalForm form = ThermalForm::Printed;
  // When true, dN_c/domega1 holds the occupation n1(omega1 / T) fixed.
  bool freeze_occupations = false;
};

struct DerivativeMethod {
  enum class Kind { Analytic, FiniteDifference };
  Kind kind = Kind::Analytic;
  double step = 1e-5;  // absolute step in omega1 for FiniteDifference

  static DerivativeMethod analytic() { return {}; }
  static DerivativeMethod finite_difference(double h) { return {Kind::FiniteDifference, h}; }
};

struct DerivativeResult {
  double value = 0.0;
  double photons = 0.0;  // N_c at the evaluation point
  bool reliable = true;
};

// dN_c/domega1 at fixed omega2. FiniteDifference uses central differences
// with one Richardson extrapolation step (h and h/2).
DerivativeResult dNc_domega1(const EffectiveModel& m, const InitialCondition& init, double t,
                             DerivativeMethod method = {}, const ThermalOptions& thermal = {});

struct PrecisionResult {
  double omega1 = 0.0;
  double Delta = 0.0;
  double t = 0.0;
  double photons = 0.0;        // N_c
  double variance_Nc = 0.0;
  double dNc_domega1 = 0.0;
  double delta2_omega1 = 0.0;  // variance_Nc / |dN_c/domega1|^2
  double qfi = 0.0;            // vacuum input only, NaN otherwise
  double crb = 0.0;            // 1 / qfi
  std::uint32_t flags = kFlagNone;

  bool ok() const { return (flags & (kFlagDerivativeUnreliable | kFlagNonFinite | kFlagEvaluationFailed)) == 0; }
};

struct MetrologyOptions {
  ThermalOptions thermal;
  DerivativeMethod derivative;
};

PrecisionResult precision_error_propagation(const EffectiveModel& m, const InitialCondition& init, double t,
                                            const MetrologyOptions& options = {});

// QFI about omega1 for vacuum input, by two routes.
struct QfiRoutes {
  double general = 0.0;  // Gaussian formula with C = (1 + 2 N_c) I, P = det(C)^(-1/2), null first moments
  double reduced = 0.0;  // |dN_c/domega1|^2 / (N_c^2 + N_c)
  double photons = 0.0;
  double derivative = 0.0;
};

// Throws std::invalid_argument for non-vacuum input.
QfiRoutes qfi_routes(const EffectiveModel& m, const InitialCondition& init, double t);
double qfi_gaussian(const EffectiveModel& m, const InitialCondition& init, double t);

// Single-mode Gaussian QFI
//   F = Tr[(C^-1 C')^2] / (2 (1 + P^2)) + 2 P'^2 / (1 - P^4) + R'^T C^-1 R'
// for quadratures (c + c^dag, (c - c^dag)/i) with vacuum covariance I.
double gaussian_qfi(const Eigen::Matrix2d& cov, const Eigen::Matrix2d& d_cov, const Eigen::Vector2d& d_mean);

}  // namespace ptmag
