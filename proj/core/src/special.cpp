#include "ptmag/special.hpp"

#include <cmath>

namespace ptmag::special {
namespace {

// Coefficient of (-z)^k in the series for cos(sqrt z) is 1/(2k)!; the other
// three functions shift the factorial index by one, two and three.
EntireSet series(double z) {
  EntireSet e{};
  e.cos_root = e.sinc_root = e.versine = e.sine_defect = 0.0;
  e.d_cos_root = e.d_sinc_root = e.d_versine = e.d_sine_defect = 0.0;

  // inv_fact[n] = 1/n!
  double inv_fact[48];
  inv_fact[0] = 1.0;
  for (int n = 1; n < 48; ++n) inv_fact[n] = inv_fact[n - 1] / n;

  const double mz = -z;
  double power = 1.0;       // (-z)^k
  double prev_power = 0.0;  // (-z)^(k-1), zero at k = 0
  for (int k = 0; k < 20; ++k) {
    e.cos_root += power * inv_fact[2 * k];
    e.sinc_root += power * inv_fact[2 * k + 1];
    e.versine += power * inv_fact[2 * k + 2];
    e.sine_defect += power * inv_fact[2 * k + 3];
    if (k > 0) {
      // d/dz (-z)^k = -k (-z)^(k-1)
      const double dp = -k * prev_power;
      e.d_cos_root += dp * inv_fact[2 * k];
      e.d_sinc_root += dp * inv_fact[2 * k + 1];
      e.d_versine += dp * inv_fact[2 * k + 2];
      e.d_sine_defect += dp * inv_fact[2 * k + 3];
    }
    prev_power = power;
    power *= mz;
  }
  return e;
}

}  // namespace

EntireSet entire_set(double z) {
  if (std::abs(z) < kSeriesRadius) return series(z);

  EntireSet e;
  if (z > 0.0) {
    const double s = std::sqrt(z);
    e.cos_root = std::cos(s);
    e.sinc_root = std::sin(s) / s;
  } else {
    const double s = std::sqrt(-z);
    e.cos_root = std::cosh(s);
    e.sinc_root = std::sinh(s) / s;
  }
  const double c = e.cos_root;
  const double sc = e.sinc_root;
  e.versine = (1.0 - c) / z;
  e.sine_defect = (1.0 - sc) / z;
  e.d_cos_root = -0.5 * sc;
  e.d_sinc_root = (c - sc) / (2.0 * z);
  e.d_versine = (0.5 * sc - e.versine) / z;
  e.d_sine_defect = ((sc - c) / (2.0 * z) - e.sine_defect) / z;
  return e;
}

}  // namespace ptmag::special
