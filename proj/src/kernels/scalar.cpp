#include <cmath>
#include <numbers>

#include "shell_terms.hpp"
#include "svlab/kernels.hpp"

namespace svlab::kernels::scalar {

void parity_batch(const ParityForm& form, std::span<const double> p0, std::span<const double> p1,
                  std::span<double> out) {
  const std::size_t terms = form.weight.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = p0[i], y = p1[i];
    const double xx = x * x, yy = y * y, xy = x * y;
    double s = 0.0;
    for (std::size_t m = 0; m < terms; ++m) {
      s += form.weight[m] * std::exp(form.c00[m] * xx + form.c11[m] * yy + form.c01[m] * xy);
    }
    out[i] = s;
  }
}

double shell_sum(int n, std::span<const double> lf) {
  const int total = 2 * n;
  const double lead = shell_lead(n, lf);
  double sum = 0.0;
  for (int k1 = 0; k1 <= total; ++k1) {
    const int rest = total - k1;
    const double base = lead - lf[k1];
    double row = 0.0;
    for (int k2 = 0; k2 <= rest; ++k2) {
      const int k3 = rest - k2;
      const double rho = shell_ratio(n, k2, k3);
      const double d = 1.0 - rho;
      row += std::exp(base - lf[k2] - lf[k3]) * d * d;
    }
    sum += row;
  }
  return sum;
}

}  // namespace svlab::kernels::scalar
