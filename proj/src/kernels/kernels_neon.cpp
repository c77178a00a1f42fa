// aarch64 only; NEON (AdvSIMD) is mandatory there, so no runtime probe.

#include <arm_neon.h>

#include <cmath>

#include "badmm/kernels.hpp"

namespace badmm::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv_neon(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_neon(m + i * cols, x, cols);
}

void gemv_t_neon(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) axpy_neon(x[i], m + i * cols, y, cols);
}

void soft_shrink_neon(const double* v, double kappa, double* out, std::size_t n) {
  const float64x2_t vk = vdupq_n_f64(kappa);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vv = vld1q_f64(v + i);
    const float64x2_t mag = vmaxq_f64(vsubq_f64(vabsq_f64(vv), vk), zero);
    // copy the sign of v onto mag, then clear lanes where mag == 0
    const uint64x2_t sign = vandq_u64(vreinterpretq_u64_f64(vv), vdupq_n_u64(0x8000000000000000ULL));
    const uint64x2_t keep = vcgtq_f64(mag, zero);
    const uint64x2_t r = vandq_u64(keep, vorrq_u64(vreinterpretq_u64_f64(mag), sign));
    vst1q_f64(out + i, vreinterpretq_f64_u64(r));
  }
  for (; i < n; ++i) {
    const double mag = std::fabs(v[i]) - kappa;
    out[i] = mag > 0.0 ? std::copysign(mag, v[i]) : 0.0;
  }
}

constexpr KernelTable kNeon{
    Backend::Neon, dot_neon, axpy_neon, gemv_neon, gemv_t_neon, soft_shrink_neon,
};

}  // namespace

namespace detail {
const KernelTable* neon_table() noexcept { return &kNeon; }
}  // namespace detail

}  // namespace badmm::kernels
