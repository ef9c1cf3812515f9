#include <cstdlib>
#include <stdexcept>
#include <string>

#include "minimax/simd.hpp"

namespace minimax::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(MINIMAX_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MINIMAX_HAVE_NEON)
      return true;  // baseline on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
  switch (isa) {
#if defined(MINIMAX_HAVE_AVX2)
    case Isa::avx2:
      return detail::avx2_table();
#endif
#if defined(MINIMAX_HAVE_NEON)
    case Isa::neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

namespace {

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("MINIMAX_ISA")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
      if (want == isa_name(isa) && isa_supported(isa)) return kernels_for(isa);
  }
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (isa_supported(isa)) return kernels_for(isa);
  return detail::scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace minimax::simd
