#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace chshdyn::simd::detail {

void cmatmul_scalar(std::size_t n, const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = c + 2 * i * n;
    std::fill(crow, crow + 2 * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double are = a[2 * (i * n + k)];
      const double aim = a[2 * (i * n + k) + 1];
      const double* brow = b + 2 * k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double bre = brow[2 * j];
        const double bim = brow[2 * j + 1];
        crow[2 * j] += are * bre - aim * bim;
        crow[2 * j + 1] += are * bim + aim * bre;
      }
    }
  }
}

void axpy_scalar(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void bell_single_excitation_scalar(std::size_t n, const double* c1re, const double* c1im,
                                   const double* c2re, const double* c2im, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = c1re[i] * c1re[i] + c1im[i] * c1im[i];
    const double b = c2re[i] * c2re[i] + c2im[i] * c2im[i];
    const double p = a + b;
    double rho22 = a, rho33 = b, coh = a * b, rho44 = 1.0 - p;
    if (p > 1.0) {
      rho22 = a / p;
      rho33 = b / p;
      coh = (a * b) / (p * p);
      rho44 = 0.0;
    }
    const double d = rho44 - rho22 - rho33;
    const double u1 = d * d;
    const double u2 = 4.0 * coh;
    // u3 == u2 because rho14 = 0 in this sector
    const double best = std::max(u1 + u2, u2 + u2);
    out[i] = 2.0 * std::sqrt(std::max(best, 0.0));
  }
}

}  // namespace chshdyn::simd::detail
