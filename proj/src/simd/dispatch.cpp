#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "chshdyn/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace chshdyn::simd {

namespace {

const KernelTable kScalar{Isa::scalar, detail::cmatmul_scalar, detail::axpy_scalar,
                          detail::bell_single_excitation_scalar};

#ifdef CHSHDYN_HAVE_AVX2
const KernelTable kAvx2{Isa::avx2, detail::cmatmul_avx2, detail::axpy_avx2,
                        detail::bell_single_excitation_avx2};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() noexcept {
  const KernelTable* best = avx2_kernels();
  if (best == nullptr) best = &kScalar;
  if (const char* env = std::getenv("CHSHDYN_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
  }
  return best;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#ifdef CHSHDYN_HAVE_AVX2
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* table = isa == Isa::scalar ? &kScalar : avx2_kernels();
  if (table == nullptr) {
    throw std::invalid_argument("kernel set '" + std::string(isa_name(isa)) + "' is unavailable");
  }
  current().store(table, std::memory_order_release);
}

void cmatmul(std::size_t n, std::span<const std::complex<double>> a,
             std::span<const std::complex<double>> b, std::span<std::complex<double>> c) {
  if (a.size() != n * n || b.size() != n * n || c.size() != n * n) {
    throw std::invalid_argument("cmatmul: operand size mismatch");
  }
  active().cmatmul(n, reinterpret_cast<const double*>(a.data()),
                   reinterpret_cast<const double*>(b.data()), reinterpret_cast<double*>(c.data()));
}

void axpy(double alpha, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  active().axpy(2 * x.size(), alpha, reinterpret_cast<const double*>(x.data()),
                reinterpret_cast<double*>(y.data()));
}

}  // namespace chshdyn::simd
