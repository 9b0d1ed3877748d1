#include "ptmag/oracle.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace ptmag {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Relative loss of Hermiticity tolerated before an accepted step is rejected.
constexpr double kSymmetryTolerance = 1e-8;

template <int Dim>
struct Moments {
  using Vec = Eigen::Matrix<cd, Dim, 1>;
  using Mat = Eigen::Matrix<cd, Dim, Dim>;
  Vec mean = Vec::Zero();
  Mat N = Mat::Zero();
  Mat M = Mat::Zero();

  static constexpr std::size_t kSize = 2 * (Dim + 2 * Dim * Dim);

  void pack(State& x) const {
    x.resize(kSize);
    std::size_t k = 0;
    auto put = [&](cd v) {
      x[k++] = v.real();
      x[k++] = v.imag();
    };
    for (int i = 0; i < Dim; ++i) put(mean(i));
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) put(N(i, j));
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) put(M(i, j));
  }

  static Moments unpack(const State& x) {
    Moments out;
    std::size_t k = 0;
    auto get = [&]() {
      const cd v{x[k], x[k + 1]};
      k += 2;
      return v;
    };
    for (int i = 0; i < Dim; ++i) out.mean(i) = get();
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) out.N(i, j) = get();
    for (int i = 0; i < Dim; ++i)
      for (int j = 0; j < Dim; ++j) out.M(i, j) = get();
    return out;
  }

  // Asserts the structure survived the step, then restores it exactly.
  void enforce_symmetry() {
    const double scale = std::max({1.0, N.cwiseAbs().maxCoeff(), M.cwiseAbs().maxCoeff()});
    const double defect = std::max((N - N.adjoint()).cwiseAbs().maxCoeff(),
                                   (M - M.transpose()).cwiseAbs().maxCoeff());
    if (defect > kSymmetryTolerance * scale) {
      throw IntegrationError("moment integration lost Hermiticity (defect " + std::to_string(defect) + ")");
    }
    N = (0.5 * (N + N.adjoint())).eval();
    M = (0.5 * (M + M.transpose())).eval();
  }
};

template <int Dim>
struct LinearMomentSystem {
  using Mat = typename Moments<Dim>::Mat;
  Mat drift;       // K
  Mat normal;      // <xi^dag xi>
  Mat anomalous;   // <xi xi>

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const auto s = Moments<Dim>::unpack(x);
    Moments<Dim> d;
    d.mean = drift * s.mean;
    d.N = drift.conjugate() * s.N + s.N * drift.transpose() + normal;
    d.M = drift * s.M + s.M * drift.transpose() + anomalous;
    d.pack(dxdt);
  }
};

template <int Dim>
class MomentIntegrator {
 public:
  MomentIntegrator(LinearMomentSystem<Dim> system, const StepControl& control)
      : system_(std::move(system)), control_(control), dt_(control.initial_step) {
    if (!(control.rel_tol > 0.0) || !(control.abs_tol > 0.0) || !(control.initial_step > 0.0)) {
      throw std::invalid_argument("step control tolerances and initial step must be positive");
    }
  }

  // Advances `state` from t to t_end.
  void advance(Moments<Dim>& state, double& t, double t_end) {
    if (t_end < t) throw std::invalid_argument("oracle times must be ascending and non-negative");
    State x;
    state.pack(x);
    auto stepper = odeint::make_controlled(control_.abs_tol, control_.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    while (t < t_end) {
      const double remaining = t_end - t;
      const bool last = dt_ >= remaining;
      double dt = last ? remaining : dt_;
      const double t_before = t;
      const auto result = stepper.try_step(system_, x, t, dt);
      if (result == odeint::success) {
        if (++steps_ > control_.max_steps) throw IntegrationError("oracle step budget exhausted");
        if (last) t = t_end;
        auto s = Moments<Dim>::unpack(x);
        s.enforce_symmetry();
        s.pack(x);
        // Keep the controller's suggestion unless the step was clipped to land on t_end.
        if (!last || dt > dt_) dt_ = dt;
      } else {
        t = t_before;
        dt_ = dt;
        if (dt_ < control_.min_step) {
          throw IntegrationError("oracle step size underflow at t = " + std::to_string(t));
        }
      }
    }
    state = Moments<Dim>::unpack(x);
  }

 private:
  LinearMomentSystem<Dim> system_;
  StepControl control_;
  double dt_;
  std::size_t steps_ = 0;
};

LinearMomentSystem<2> effective_system(const EffectiveModel& m) {
  const auto noise = noise_correlators(m);
  return {drift_matrix(m), noise.normal, noise.anomalous};
}

Moments<2> to_moments(const MomentState& s) {
  Moments<2> out;
  out.mean = s.mean;
  out.N = s.N;
  out.M = s.M;
  return out;
}

MomentState from_moments(const Moments<2>& s, double t) {
  MomentState out;
  out.t = t;
  out.mean = s.mean;
  out.N = s.N;
  out.M = s.M;
  return out;
}

LinearMomentSystem<3> full_system(const PhysicalParams& p) {
  LinearMomentSystem<3> sys;
  sys.drift << -kI * p.omega1 + p.gamma1, 0.0, -kI * p.g13,
               0.0, -kI * p.omega2 + p.gamma2, -kI * p.g23,
               -kI * p.g13, -kI * p.g23, -kI * p.omega3 - p.kappa;
  // a_in, b_in, c_in are vacuum white noise: only the gain channels, which
  // enter through a_in^dag and b_in^dag, feed the normal-ordered moments.
  sys.normal = Mat3c::Zero();
  sys.normal(0, 0) = 2.0 * p.gamma1;
  sys.normal(1, 1) = 2.0 * p.gamma2;
  sys.anomalous = Mat3c::Zero();
  return sys;
}

ThreeModeState to_three_mode(const Moments<3>& s, double t) {
  ThreeModeState out;
  out.t = t;
  out.mean = s.mean;
  out.N = s.N;
  out.M = s.M;
  return out;
}

void check_times(std::span<const double> times) {
  if (!times.empty() && times.front() < 0.0) throw std::invalid_argument("oracle times must be non-negative");
  if (!std::is_sorted(times.begin(), times.end())) throw std::invalid_argument("oracle times must be ascending");
}

}  // namespace

MomentState oracle_integrate_effective(const EffectiveModel& m, const MomentState& start, double t,
                                       const StepControl& control) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  MomentIntegrator<2> integrator(effective_system(m), control);
  auto state = to_moments(start);
  double now = 0.0;
  integrator.advance(state, now, t);
  return from_moments(state, start.t + t);
}

MomentState oracle_integrate_effective(const EffectiveModel& m, const InitialCondition& init, double t,
                                       const StepControl& control) {
  return oracle_integrate_effective(m, initial_moments(m, init), t, control);
}

std::vector<MomentState> oracle_trajectory_effective(const EffectiveModel& m, const InitialCondition& init,
                                                     std::span<const double> times, const StepControl& control) {
  check_times(times);
  MomentIntegrator<2> integrator(effective_system(m), control);
  auto state = to_moments(initial_moments(m, init));
  double now = 0.0;
  std::vector<MomentState> out;
  out.reserve(times.size());
  for (double t : times) {
    integrator.advance(state, now, t);
    out.push_back(from_moments(state, t));
  }
  return out;
}

MomentState ThreeModeState::magnons() const {
  MomentState out;
  out.t = t;
  out.mean = mean.head<2>();
  out.N = N.topLeftCorner<2, 2>();
  out.M = M.topLeftCorner<2, 2>();
  return out;
}

std::vector<ThreeModeState> oracle_trajectory_full(const PhysicalParams& p, const InitialCondition& init,
                                                   std::span<const double> times, const StepControl& control) {
  p.validate();
  check_times(times);
  MomentIntegrator<3> integrator(full_system(p), control);
  Moments<3> state;
  const auto [n1, n2] = init.occupations(p.omega1, p.omega2);
  state.N(0, 0) = n1;
  state.N(1, 1) = n2;
  double now = 0.0;
  std::vector<ThreeModeState> out;
  out.reserve(times.size());
  for (double t : times) {
    integrator.advance(state, now, t);
    out.push_back(to_three_mode(state, t));
  }
  return out;
}

ThreeModeState oracle_integrate_full(const PhysicalParams& p, const InitialCondition& init, double t,
                                     const StepControl& control) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  const double times[] = {t};
  return oracle_trajectory_full(p, init, times, control).front();
}

}  // namespace ptmag
