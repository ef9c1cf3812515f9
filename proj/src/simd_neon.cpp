#include <arm_neon.h>

#include <cmath>

#include "minimax/simd.hpp"

namespace minimax::simd::detail {
namespace {

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // vmulq + vaddq rather than vfmaq: keep rounding identical to the scalar loop.
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  float64x2_t s1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 = vaddq_f64(s0, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    s1 = vaddq_f64(s1, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double s = vaddvq_f64(vaddq_f64(s0, s1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double max_abs_neon(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > r) r = v;
  }
  return r;
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable table{Isa::neon, &axpy_neon, &dot_neon, &max_abs_neon};
  return table;
}

}  // namespace minimax::simd::detail
