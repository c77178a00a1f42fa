#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the target supports it, an AVX2/FMA (x86-64) or NEON (aarch64)
// variant. The variant is chosen once at startup from CPU features and can be
// pinned with BADMM_KERNELS=scalar|avx2|neon or set_backend().

#include <cstddef>
#include <span>
#include <string_view>

namespace badmm::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

struct KernelTable {
  Backend backend;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = M x, M row-major rows x cols
  void (*gemv)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y = M^T x, M row-major rows x cols
  void (*gemv_t)(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y);
  // out[i] = sign(v[i]) * max(|v[i]| - kappa, 0)
  void (*soft_shrink)(const double* v, double kappa, double* out, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
bool backend_available(Backend b) noexcept;
/// Throws badmm::Error(InvalidParameter) if `b` is not available on this CPU/build.
const KernelTable& table_for(Backend b);

const KernelTable& active() noexcept;
Backend active_backend() noexcept;
void set_backend(Backend b);

/// RAII pin of the active backend; restores the previous one on scope exit.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : previous_(active_backend()) { set_backend(b); }
  ~ScopedBackend() { set_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

// Span front-ends over the active table. Length checks are the caller's job.
inline double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return active().dot(x.data(), y.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline void soft_shrink(std::span<const double> v, double kappa, std::span<double> out) noexcept {
  active().soft_shrink(v.data(), kappa, out.data(), v.size());
}

namespace detail {
const KernelTable* avx2_table() noexcept;  // nullptr when not compiled in
const KernelTable* neon_table() noexcept;
}  // namespace detail

}  // namespace badmm::kernels
