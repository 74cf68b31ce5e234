#pragma once

// Internal entry points. The AVX2 translation unit is compiled with -mavx2,
// so it only sees raw pointers to keep inline library code out of it.

#include <cstddef>

namespace chshdyn::simd::detail {

void cmatmul_scalar(std::size_t n, const double* a, const double* b, double* c);
void axpy_scalar(std::size_t n, double alpha, const double* x, double* y);
void bell_single_excitation_scalar(std::size_t n, const double* c1re, const double* c1im,
                                   const double* c2re, const double* c2im, double* out);

#ifdef CHSHDYN_HAVE_AVX2
void cmatmul_avx2(std::size_t n, const double* a, const double* b, double* c);
void axpy_avx2(std::size_t n, double alpha, const double* x, double* y);
void bell_single_excitation_avx2(std::size_t n, const double* c1re, const double* c1im,
                                 const double* c2re, const double* c2im, double* out);
#endif

}  // namespace chshdyn::simd::detail
