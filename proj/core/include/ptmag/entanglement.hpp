#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ptmag/dynamics.hpp"

namespace ptmag {

// V_ij = <U_i U_j + U_j U_i>/2 - <U_i><U_j> over
// U = (a + a^dag, (a - a^dag)/i, b + b^dag, (b - b^dag)/i). Vacuum maps to I.
struct QuadratureCovariance {
  Eigen::Matrix4d V = Eigen::Matrix4d::Identity();

  Eigen::Matrix2d A() const { return V.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d B() const { return V.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d C() const { return V.topRightCorner<2, 2>(); }

  // Smallest eigenvalue of V + i Omega, Omega the two-mode symplectic form.
  double physicality_margin() const;
  // margin >= -tol * max(1, |V|)
  bool physical(double tol = 1e-9) const;
};

QuadratureCovariance quadrature_covariance(const MomentState& ms);

// Raised when the partially transposed spectrum is complex beyond rounding.
class InvalidRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// nu- = sqrt((D - sqrt(D^2 - 4 det V)) / 2), D = det A + det B - 2 det C.
double nu_minus(const QuadratureCovariance& cov);

// max(0, -ln nu-)
double log_negativity(const QuadratureCovariance& cov);
double log_negativity_from_nu(double nu);

// Side-by-side comparison of the reference closed-form vacuum nu- expression,
//   (4 Gamma t Delta^2/L^2 - 16 Gamma^3 sin(L t)/L^3 + 1)^2 - 32 Gamma^4 (1 - cos L t)^2 / L^4,
// with the symplectic eigenvalue computed from the evolved moments. The
// expression is tested as a candidate for nu-^2.
struct NuMinusReport {
  double t = 0.0;
  double direct = 1.0;          // nu- from the covariance matrix
  double direct_squared = 1.0;
  double printed = 1.0;
  double ratio_to_square = 1.0;       // printed / nu-^2
  double difference_to_square = 0.0;  // printed - nu-^2
  bool same_side_of_one = true;       // sign(printed - 1) == sign(nu-^2 - 1)
};

NuMinusReport nu_minus_closed_form_check(const EffectiveModel& m, double t);

// Second-moment Hillery-Zubairy witness |<ab>|^2 - <a^dag a><b^dag b>.
// Positive values certify entanglement; non-positive values are inconclusive.
double hz_witness(const MomentState& ms);

struct EntanglementRow {
  double t = 0.0;
  double nu_minus = 1.0;
  double log_negativity = 0.0;
  double hz_witness = 0.0;
};

std::vector<EntanglementRow> entanglement_sweep(const EffectiveModel& m, const InitialCondition& init,
                                                std::span<const double> times);

}  // namespace ptmag
