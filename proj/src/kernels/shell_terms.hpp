#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace svlab::kernels {

// 2 ln (2n)! - 2 ln n! - 2n ln 6
inline double shell_lead(int n, std::span<const double> lf) {
  return 2.0 * lf[2 * n] - 2.0 * lf[n] - 2.0 * n * std::log(6.0);
}

// Ratio between the Z_x^b Z_x^c-shifted amplitude and the original one at
// (k1, k2, k3) in shell 2n, in the infinite-squeezing limit.
inline double shell_ratio(int n, int k2, int k3) {
  const bool e2 = k2 % 2 == 0;
  const bool e3 = k3 % 2 == 0;
  if (e2 && e3) return (2.0 * n + 1.0) / (3.0 * std::sqrt((k2 + 1.0) * (k3 + 1.0)));
  if (!e2 && !e3) return 3.0 * std::sqrt(static_cast<double>(k2) * k3) / (2.0 * n - 1.0);
  if (e2) return std::sqrt(k3 / (k2 + 1.0));
  return std::sqrt(k2 / (k3 + 1.0));
}

}  // namespace svlab::kernels
