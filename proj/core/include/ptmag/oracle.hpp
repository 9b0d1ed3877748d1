#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ptmag/dynamics.hpp"
#include "ptmag/model.hpp"

namespace ptmag {

// Brute-force integration of the linear moment equations
//   d<x>/dt       = K <x>
//   d<x^dag x>/dt = conj(K) N + N K^T + <xi^dag xi>
//   d<x x>/dt     = K M + M K^T + <xi xi>
// implied by the Langevin equations, with an adaptive Runge-Kutta-Fehlberg 7(8)
// stepper. Shares no code with the closed-form propagator.

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 10'000'000;
};

// Raised when the step size underflows min_step, the step budget runs out, or
// the Hermitian/symmetric structure of the second moments is lost.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MomentState oracle_integrate_effective(const EffectiveModel& m, const InitialCondition& init, double t,
                                       const StepControl& control = {});
MomentState oracle_integrate_effective(const EffectiveModel& m, const MomentState& start, double t,
                                       const StepControl& control = {});

// One integration through ascending `times`, returning the state at each.
std::vector<MomentState> oracle_trajectory_effective(const EffectiveModel& m, const InitialCondition& init,
                                                     std::span<const double> times,
                                                     const StepControl& control = {});

using Mat3c = Eigen::Matrix3cd;
using Vec3c = Eigen::Vector3cd;

// Moments of (a, b, c) in the full three-mode model.
struct ThreeModeState {
  double t = 0.0;
  Vec3c mean = Vec3c::Zero();
  Mat3c N = Mat3c::Zero();
  Mat3c M = Mat3c::Zero();

  double cavity_photons() const { return N(2, 2).real(); }
  MomentState magnons() const;
};

// Magnons start in `init` (occupations from p.omega1, p.omega2), the cavity in vacuum.
ThreeModeState oracle_integrate_full(const PhysicalParams& p, const InitialCondition& init, double t,
                                     const StepControl& control = {});
std::vector<ThreeModeState> oracle_trajectory_full(const PhysicalParams& p, const InitialCondition& init,
                                                   std::span<const double> times,
                                                   const StepControl& control = {});

}  // namespace ptmag
