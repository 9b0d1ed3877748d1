#pragma once

namespace ptmag::special {

// Entire functions of z = x^2 that every closed form in the library is built
// from. For z > 0 they are trigonometric in sqrt(z), for z < 0 hyperbolic in
// sqrt(-z), and a Taylor series covers |z| < kSeriesRadius. Using z instead of
// a complex root keeps the PT-exact phase, the broken phase and the
// exceptional point on one code path.
inline constexpr double kSeriesRadius = 1.0;

struct EntireSet {
  double cos_root = 1.0;      // cos(sqrt z)
  double sinc_root = 1.0;     // sin(sqrt z) / sqrt z
  double versine = 0.5;       // (1 - cos(sqrt z)) / z
  double sine_defect = 1.0 / 6.0;  // (1 - sin(sqrt z) / sqrt z) / z

  // d/dz of the four values above.
  double d_cos_root = -0.5;
  double d_sinc_root = -1.0 / 6.0;
  double d_versine = -1.0 / 24.0;
  double d_sine_defect = -1.0 / 120.0;
};

EntireSet entire_set(double z);

}  // namespace ptmag::special
