#include "svlab/shell_sums.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shell_terms.hpp"
#include "svlab/error.hpp"
#include "svlab/parallel.hpp"

namespace svlab::pseudospin {
namespace {

constexpr double kMaxLogMagnitude = 1e7;

}  // namespace

double residual_norm(const TruncatedTripartiteState& state) {
  const int n_max = state.cutoff();
  const int s_max = n_max + 2;

  // For each s and shift d: A = sum u(k1,s)^2, B = sum u(k1,s+d)^2,
  // X = sum u(k1,s) u(k1,s+d), over every k1 with the parity of s.
  struct Sums {
    double a = 0.0;
    double b[3] = {0.0, 0.0, 0.0};
    double x[3] = {0.0, 0.0, 0.0};
  };
  std::vector<Sums> sums(static_cast<std::size_t>(s_max) + 1);
  for (int s = 0; s <= s_max; ++s) {
    Sums& q = sums[s];
    for (int k1 = s % 2; k1 <= n_max; k1 += 2) {
      const double u = state.pair_factor(k1, s);
      q.a += u * u;
      for (int i = 0; i < 3; ++i) {
        const double w = state.pair_factor(k1, s + 2 * i - 2);
        q.b[i] += w * w;
        q.x[i] += u * w;
      }
    }
  }

  double norm_sq = 0.0;
  double res_sq = 0.0;
  for (int s = 0; s <= s_max; ++s) {
    const Sums& q = sums[s];
    for (int k2 = 0; k2 <= s; ++k2) {
      const int k3 = s - k2;
      const bool e2 = k2 % 2 == 0;
      const bool e3 = k3 % 2 == 0;
      const int src2 = e2 ? k2 + 1 : k2 - 1;
      const int src3 = e3 ? k3 + 1 : k3 - 1;
      const int i = (src2 + src3 - s) / 2 + 1;
      const double v = state.split_factor(s, k2);
      const double vs = state.split_factor(src2 + src3, src2);
      norm_sq += v * v * q.a;
      res_sq += v * v * q.a + vs * vs * q.b[i] - 2.0 * v * vs * q.x[i];
    }
  }
  return std::sqrt(std::max(0.0, res_sq / norm_sq));
}

double residual_norm(double r, int cutoff, double tail_tolerance) {
  return residual_norm(ghz_state_fock(r, cutoff, tail_tolerance));
}

double shell_term_f(int n, kernels::Isa isa) {
  if (n < 0) throw DomainError("shell index must be >= 0");
  std::vector<double> lf(2 * static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t k = 1; k < lf.size(); ++k) lf[k] = std::lgamma(static_cast<double>(k) + 1.0);
  const double lead = kernels::shell_lead(n, lf);
  if (!std::isfinite(lead) || std::abs(lead) > kMaxLogMagnitude || lf.back() > kMaxLogMagnitude)
    throw PrecisionError("shell " + std::to_string(n) + " exceeds the resolvable log-magnitude");
  const double f = kernels::shell_sum(isa, n, lf);
  if (!std::isfinite(f)) throw PrecisionError("shell sum is not finite at n = " + std::to_string(n));
  return f;
}

std::vector<double> shell_terms(std::span<const int> ns, int threads, kernels::Isa isa) {
  std::vector<double> out(ns.size());
  parallel_for(ns.size(), threads, [&](std::size_t i) { out[i] = shell_term_f(ns[i], isa); });
  return out;
}

}  // namespace svlab::pseudospin
