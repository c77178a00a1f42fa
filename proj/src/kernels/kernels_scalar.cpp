#include "badmm/kernels.hpp"

#include <cmath>

namespace badmm::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(m + i * cols, x, cols);
}

void gemv_t_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(x[i], m + i * cols, y, cols);
}

void soft_shrink_scalar(const double* v, double kappa, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::fabs(v[i]) - kappa;
    out[i] = mag > 0.0 ? std::copysign(mag, v[i]) : 0.0;
  }
}

constexpr KernelTable kScalar{
    Backend::Scalar, dot_scalar, axpy_scalar, gemv_scalar, gemv_t_scalar, soft_shrink_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace badmm::kernels
