#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2/FMA variant. The active table is chosen once at startup from the CPU
// features; CHSHDYN_SIMD=scalar|avx2 in the environment overrides it.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace chshdyn::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  /// c = a * b for n x n complex matrices, row-major, interleaved (re, im).
  void (*cmatmul)(std::size_t n, const double* a, const double* b, double* c);

  /// y += alpha * x over n doubles.
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);

  /// Maximal CHSH value of the single-excitation X state built from the
  /// amplitude pairs (c1, c2), given as split real/imaginary arrays of length n.
  /// An amplitude norm above one is renormalised (rho44 = 0).
  void (*bell_single_excitation)(std::size_t n, const double* c1re, const double* c1im,
                                 const double* c2re, const double* c2im, double* out);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when not compiled in or when the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

const KernelTable& active() noexcept;

/// Forces a kernel table. Throws std::invalid_argument if it is unavailable.
void select(Isa isa);

// Typed wrappers over the active table.

void cmatmul(std::size_t n, std::span<const std::complex<double>> a,
             std::span<const std::complex<double>> b, std::span<std::complex<double>> c);

void axpy(double alpha, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y);

}  // namespace chshdyn::simd
