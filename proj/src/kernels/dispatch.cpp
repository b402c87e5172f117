#include <cmath>
#include <cstdlib>
#include <string_view>

#include "svlab/kernels.hpp"

namespace svlab::kernels {

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() noexcept {
#if defined(SVLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() noexcept {
  static const Isa isa = [] {
    const char* env = std::getenv("SVLAB_KERNEL");
    const std::string_view want = env ? env : "auto";
    if (want == "scalar") return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

void parity_batch(Isa isa, const ParityForm& form, std::span<const double> p0,
                  std::span<const double> p1, std::span<double> out) {
  if (isa == Isa::avx2 && avx2_available()) {
    avx2::parity_batch(form, p0, p1, out);
  } else {
    scalar::parity_batch(form, p0, p1, out);
  }
}

double shell_sum(Isa isa, int n, std::span<const double> log_factorial) {
  if (isa == Isa::avx2 && avx2_available()) return avx2::shell_sum(n, log_factorial);
  return scalar::shell_sum(n, log_factorial);
}

#if !defined(SVLAB_HAVE_AVX2)
// Without the AVX2 translation unit the variant entry points forward to the
// scalar reference so callers and tests link unchanged.
namespace avx2 {
void parity_batch(const ParityForm& form, std::span<const double> p0, std::span<const double> p1,
                  std::span<double> out) {
  scalar::parity_batch(form, p0, p1, out);
}
double shell_sum(int n, std::span<const double> log_factorial) {
  return scalar::shell_sum(n, log_factorial);
}
void exp_array(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i]);
}
}  // namespace avx2
#endif

}  // namespace svlab::kernels
