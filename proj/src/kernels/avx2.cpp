// Compiled with -mavx2 -mfma. Only reached through the runtime dispatcher
// after the CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "shell_terms.hpp"
#include "svlab/kernels.hpp"

namespace svlab::kernels::avx2 {
namespace {

// exp(x) for x in [-708.39, 709]; inputs below the range flush to zero.
// Cody-Waite reduction by ln 2 and a degree-13 Taylor polynomial on
// |r| <= ln(2)/2, accurate to a few ulp.
inline __m256d exp_pd(__m256d x) {
  const __m256d lower = _mm256_set1_pd(-708.39);
  const __m256d upper = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lower, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lower), upper);

  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), r);

  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // 2^k via the exponent field; k in [-1022, 1023].
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)),
                                      _mm256_castpd_si256(magic));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, result);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void exp_array(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_loadu_pd(x.data() + i)));
  }
  for (; i < x.size(); ++i) {
    alignas(32) double buf[4] = {x[i], 0.0, 0.0, 0.0};
    _mm256_store_pd(buf, exp_pd(_mm256_load_pd(buf)));
    out[i] = buf[0];
  }
}

void parity_batch(const ParityForm& form, std::span<const double> p0, std::span<const double> p1,
                  std::span<double> out) {
  const std::size_t terms = form.weight.size();
  std::size_t i = 0;
  for (; i + 4 <= out.size(); i += 4) {
    const __m256d x = _mm256_loadu_pd(p0.data() + i);
    const __m256d y = _mm256_loadu_pd(p1.data() + i);
    const __m256d xx = _mm256_mul_pd(x, x);
    const __m256d yy = _mm256_mul_pd(y, y);
    const __m256d xy = _mm256_mul_pd(x, y);
    __m256d s = _mm256_setzero_pd();
    for (std::size_t m = 0; m < terms; ++m) {
      __m256d e = _mm256_mul_pd(_mm256_set1_pd(form.c00[m]), xx);
      e = _mm256_fmadd_pd(_mm256_set1_pd(form.c11[m]), yy, e);
      e = _mm256_fmadd_pd(_mm256_set1_pd(form.c01[m]), xy, e);
      s = _mm256_fmadd_pd(_mm256_set1_pd(form.weight[m]), exp_pd(e), s);
    }
    _mm256_storeu_pd(out.data() + i, s);
  }
  if (i < out.size()) {
    scalar::parity_batch(form, p0.subspan(i), p1.subspan(i), out.subspan(i));
  }
}

double shell_sum(int n, std::span<const double> lf) {
  const int total = 2 * n;
  const double lead = shell_lead(n, lf);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d c_ee = _mm256_set1_pd((2.0 * n + 1.0) / 3.0);
  const __m256d c_oo = _mm256_set1_pd(3.0 / (2.0 * n - 1.0));
  const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

  double sum = 0.0;
  for (int k1 = 0; k1 <= total; ++k1) {
    const int rest = total - k1;
    const double base = lead - lf[k1];
    const __m256d vbase = _mm256_set1_pd(base);
    const __m256d vrest = _mm256_set1_pd(rest);
    const bool rest_even = rest % 2 == 0;
    __m256d acc = _mm256_setzero_pd();
    int k2 = 0;
    for (; k2 + 3 <= rest; k2 += 4) {
      const __m256d lf2 = _mm256_loadu_pd(lf.data() + k2);
      // lf[rest-k2], lf[rest-k2-1], ... : load ascending then reverse.
      const __m256d lf3 = _mm256_permute4x64_pd(_mm256_loadu_pd(lf.data() + rest - k2 - 3), 0x1B);
      const __m256d w = exp_pd(_mm256_sub_pd(_mm256_sub_pd(vbase, lf2), lf3));

      const __m256d a = _mm256_add_pd(_mm256_set1_pd(k2), lane);  // k2 per lane
      const __m256d b = _mm256_sub_pd(vrest, a);                   // k3 per lane
      __m256d rho;
      if (rest_even) {
        // lanes 0, 2: k2, k3 even; lanes 1, 3: both odd
        const __m256d x_ee = _mm256_mul_pd(_mm256_add_pd(a, one), _mm256_add_pd(b, one));
        const __m256d x_oo = _mm256_mul_pd(a, b);
        const __m256d s = _mm256_sqrt_pd(_mm256_blend_pd(x_ee, x_oo, 0b1010));
        rho = _mm256_blend_pd(_mm256_div_pd(c_ee, s), _mm256_mul_pd(c_oo, s), 0b1010);
      } else {
        // lanes 0, 2: k2 even, k3 odd; lanes 1, 3: k2 odd, k3 even
        const __m256d x_eo = _mm256_div_pd(b, _mm256_add_pd(a, one));
        const __m256d x_oe = _mm256_div_pd(a, _mm256_add_pd(b, one));
        rho = _mm256_sqrt_pd(_mm256_blend_pd(x_eo, x_oe, 0b1010));
      }
      const __m256d d = _mm256_sub_pd(one, rho);
      acc = _mm256_fmadd_pd(_mm256_mul_pd(w, d), d, acc);
    }
    double row = hsum(acc);
    for (; k2 <= rest; ++k2) {
      const int k3 = rest - k2;
      const double d = 1.0 - shell_ratio(n, k2, k3);
      row += std::exp(base - lf[k2] - lf[k3]) * d * d;
    }
    sum += row;
  }
  return sum;
}

}  // namespace svlab::kernels::avx2
