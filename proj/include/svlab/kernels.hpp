#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// when built with SVLAB_ENABLE_AVX2 and supported by the running CPU, an
// AVX2/FMA variant. The variant is picked once at runtime; SVLAB_KERNEL=scalar
// or SVLAB_KERNEL=avx2 in the environment overrides the choice.

#include <span>
#include <string_view>
#include <vector>

namespace svlab::kernels {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa) noexcept;

// True when the AVX2 variants were compiled in and the CPU has AVX2 and FMA.
bool avx2_available() noexcept;

// Runtime choice, honouring SVLAB_KERNEL. Falls back to scalar if the
// requested variant is unavailable.
Isa active_isa() noexcept;

// Displaced-parity Svetlichny value at q0 = q1 = 0 written as a sum of
// Gaussians in (p0, p1):
//   S(p0, p1) = sum_m weight[m] * exp(c00[m] p0^2 + c11[m] p1^2 + c01[m] p0 p1)
struct ParityForm {
  std::vector<double> weight;
  std::vector<double> c00;
  std::vector<double> c11;
  std::vector<double> c01;
};

// out[i] = S(p0[i], p1[i]). All spans must have the same length.
void parity_batch(Isa isa, const ParityForm& form, std::span<const double> p0,
                  std::span<const double> p1, std::span<double> out);

// Large-squeezing residual shell sum
//   sum_{k1+k2+k3 = 2n} exp(L - lf[k1] - lf[k2] - lf[k3]) (1 - rho_k)^2
// with L = 2 lf[2n] - 2 lf[n] - 2n ln 6, lf[k] = ln k!, and rho_k the
// parity-dependent ratio between the shifted and unshifted Fock amplitudes.
// `log_factorial` must hold at least 2n + 1 entries.
double shell_sum(Isa isa, int n, std::span<const double> log_factorial);

namespace scalar {
void parity_batch(const ParityForm& form, std::span<const double> p0, std::span<const double> p1,
                  std::span<double> out);
double shell_sum(int n, std::span<const double> log_factorial);
}  // namespace scalar

namespace avx2 {
void parity_batch(const ParityForm& form, std::span<const double> p0, std::span<const double> p1,
                  std::span<double> out);
double shell_sum(int n, std::span<const double> log_factorial);
// Vectorized exp over a contiguous array; exposed for equivalence tests.
void exp_array(std::span<const double> x, std::span<double> out);
}  // namespace avx2

}  // namespace svlab::kernels
