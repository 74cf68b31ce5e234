#include <immintrin.h>

#include "kernels_impl.hpp"

namespace chshdyn::simd::detail {

void cmatmul_avx2(std::size_t n, const double* a, const double* b, double* c) {
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = c + 2 * i * n;
    std::size_t j = 0;
    for (; j < pairs; ++j) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const __m256d are = _mm256_broadcast_sd(a + 2 * (i * n + k));
        const __m256d aim = _mm256_broadcast_sd(a + 2 * (i * n + k) + 1);
        const __m256d bv = _mm256_loadu_pd(b + 2 * k * n + 4 * j);
        const __m256d bsw = _mm256_permute_pd(bv, 0x5);
        // (re*bre - im*bim, re*bim + im*bre) per complex lane
        acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, bv, _mm256_mul_pd(aim, bsw)));
      }
      _mm256_storeu_pd(crow + 4 * j, acc);
    }
    if (n % 2 != 0) {
      const std::size_t jj = n - 1;
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double xr = a[2 * (i * n + k)], xi = a[2 * (i * n + k) + 1];
        const double yr = b[2 * (k * n + jj)], yi = b[2 * (k * n + jj) + 1];
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
      }
      crow[2 * jj] = re;
      crow[2 * jj + 1] = im;
    }
  }
}

void axpy_avx2(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void bell_single_excitation_avx2(std::size_t n, const double* c1re, const double* c1im,
                                 const double* c2re, const double* c2im, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x1 = _mm256_loadu_pd(c1re + i), y1 = _mm256_loadu_pd(c1im + i);
    const __m256d x2 = _mm256_loadu_pd(c2re + i), y2 = _mm256_loadu_pd(c2im + i);
    const __m256d a = _mm256_add_pd(_mm256_mul_pd(x1, x1), _mm256_mul_pd(y1, y1));
    const __m256d b = _mm256_add_pd(_mm256_mul_pd(x2, x2), _mm256_mul_pd(y2, y2));
    const __m256d p = _mm256_add_pd(a, b);
    const __m256d ab = _mm256_mul_pd(a, b);

    const __m256d over = _mm256_cmp_pd(p, one, _CMP_GT_OQ);
    const __m256d rho22 = _mm256_blendv_pd(a, _mm256_div_pd(a, p), over);
    const __m256d rho33 = _mm256_blendv_pd(b, _mm256_div_pd(b, p), over);
    const __m256d coh = _mm256_blendv_pd(ab, _mm256_div_pd(ab, _mm256_mul_pd(p, p)), over);
    const __m256d rho44 = _mm256_blendv_pd(_mm256_sub_pd(one, p), zero, over);

    const __m256d d = _mm256_sub_pd(_mm256_sub_pd(rho44, rho22), rho33);
    const __m256d u1 = _mm256_mul_pd(d, d);
    const __m256d u2 = _mm256_mul_pd(four, coh);
    const __m256d best = _mm256_max_pd(_mm256_add_pd(u1, u2), _mm256_add_pd(u2, u2));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(two, _mm256_sqrt_pd(_mm256_max_pd(best, zero))));
  }
  if (i < n) bell_single_excitation_scalar(n - i, c1re + i, c1im + i, c2re + i, c2im + i, out + i);
}

}  // namespace chshdyn::simd::detail
