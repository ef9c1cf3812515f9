#pragma once

// Data-parallel inner loops used by the simplex tableau and residual evaluation.
//
// Every kernel has a portable scalar reference implementation and, where the
// target supports it, an AVX2 (x86-64) or NEON (AArch64) variant. The active
// variant is chosen once at runtime from CPU features; MINIMAX_ISA=scalar|avx2|neon
// overrides the choice.
//
// axpy and max_abs are bit-identical across variants (elementwise mul/add with
// no contraction; max is exact). dot reassociates the sum and agrees with the
// scalar reference only to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace minimax::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // max |x[i]|, 0 for n == 0
  double (*max_abs)(const double* x, std::size_t n);
};

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa) noexcept;

/// Kernel table for a specific variant. Throws std::invalid_argument if unsupported.
const KernelTable& kernels_for(Isa isa);

/// Kernel table selected for this process.
const KernelTable& active() noexcept;

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

inline double max_abs(std::span<const double> x) { return active().max_abs(x.data(), x.size()); }

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(MINIMAX_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(MINIMAX_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif
}  // namespace detail

}  // namespace minimax::simd
