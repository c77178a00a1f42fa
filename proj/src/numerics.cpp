#include "badmm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "badmm/errors.hpp"
#include "badmm/kernels.hpp"

namespace badmm {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool finite_range(std::span<const double> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

// ---- Vector ---------------------------------------------------------------

Vector::Vector(std::vector<double> values) : data_(std::move(values)) {
  if (!all_finite()) throw Error(ErrorKind::InvalidParameter, "vector has non-finite entries");
}

Vector::Vector(std::initializer_list<double> values) : Vector(std::vector<double>(values)) {}

bool Vector::all_finite() const noexcept { return finite_range(data_); }

Vector& Vector::operator+=(const Vector& o) {
  require_same_size(size(), o.size(), "vector +=");
  kernels::axpy(1.0, o.span(), span());
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same_size(size(), o.size(), "vector -=");
  kernels::axpy(-1.0, o.span(), span());
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
  require_same_size(a.size(), b.size(), "dot");
  return kernels::dot(a, b);
}

double squared_norm(const Vector& a) { return kernels::dot(a, a); }
double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

double distance(const Vector& a, const Vector& b) {
  require_same_size(a.size(), b.size(), "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vector concat(std::initializer_list<const Vector*> parts) {
  std::vector<double> out;
  for (const Vector* p : parts) out.insert(out.end(), p->begin(), p->end());
  Vector v(out.size());
  std::copy(out.begin(), out.end(), v.begin());
  return v;
}

// ---- Matrix ---------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require_same_size(data_.size(), rows * cols, "matrix data length");
  if (!all_finite()) throw Error(ErrorKind::InvalidParameter, "matrix has non-finite entries");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require_same_size(r.size(), cols_, "matrix row length");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorKind::InvalidParameter, "matrix has non-finite entries");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool Matrix::all_finite() const noexcept { return finite_range(data_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_size(rows_, o.rows_, "matrix += rows");
  require_same_size(cols_, o.cols_, "matrix += cols");
  kernels::axpy(1.0, o.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Vector multiply(const Matrix& m, const Vector& x) {
  require_same_size(m.cols(), x.size(), "matrix-vector product");
  Vector y(m.rows());
  kernels::active().gemv(m.data(), m.rows(), m.cols(), x.data(), y.data());
  return y;
}

Vector multiply_transposed(const Matrix& m, const Vector& x) {
  require_same_size(m.rows(), x.size(), "transposed matrix-vector product");
  Vector y(m.cols());
  kernels::active().gemv_t(m.data(), m.rows(), m.cols(), x.data(), y.data());
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_size(a.cols(), b.rows(), "matrix product");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) kernels::axpy(aik, b.row(k), out);
    }
  }
  return c;
}

Matrix outer_gram(const Matrix& a) {
  Matrix g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernels::dot(a.row(i), a.row(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix gram(const Matrix& a) { return outer_gram(a.transpose()); }

double relative_asymmetry(const Matrix& m) {
  if (!m.is_square()) return INFINITY;
  double scale = 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::fabs(m(i, j)));
      if (j > i) worst = std::max(worst, std::fabs(m(i, j) - m(j, i)));
    }
  }
  return worst / scale;
}

double frobenius_norm(const Matrix& m) {
  const std::span<const double> all(m.data(), m.rows() * m.cols());
  return std::sqrt(kernels::dot(all, all));
}

// ---- Cholesky -------------------------------------------------------------

namespace {

void require_symmetric(const Matrix& m, const LinalgTolerances& tol, const char* who) {
  if (!m.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(who) + ": matrix is not square");
  }
  if (relative_asymmetry(m) > tol.symmetry) {
    throw Error(ErrorKind::InvalidParameter, std::string(who) + ": matrix is not symmetric");
  }
}

// Returns nullopt on a nonpositive pivot.
std::optional<Matrix> cholesky_lower(const Matrix& m, double shift) {
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto li = l.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto lj = l.row(j);
      double s = m(i, j) - kernels::dot(li.first(j), lj.first(j));
      if (i == j) {
        s -= shift;
        if (!(s > 0.0)) return std::nullopt;
        li[i] = std::sqrt(s);
      } else {
        li[j] = s / lj[j];
      }
    }
  }
  return l;
}

// In-place forward then backward substitution against a row-major lower factor.
void cholesky_solve(const Matrix& l, std::span<double> u) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = (u[i] - kernels::dot(l.row(i).first(i), u.first(i))) / l(i, i);
  }
  // Lᵀ u = z, column-oriented so row i of L stays contiguous.
  for (std::size_t i = n; i-- > 0;) {
    u[i] /= l(i, i);
    if (i > 0) kernels::axpy(-u[i], l.row(i).first(i), u.first(i));
  }
}

}  // namespace

SpdFactorization SpdFactorization::factor(const Matrix& m, const LinalgTolerances& tol) {
  require_symmetric(m, tol, "spd_factor");
  auto l = cholesky_lower(m, 0.0);
  if (!l) throw Error(ErrorKind::NotSpd, "nonpositive pivot in Cholesky factorization");
  return SpdFactorization(m.rows(), std::move(*l));
}

Vector SpdFactorization::solve(const Vector& v) const {
  require_same_size(v.size(), n_, "spd solve");
  Vector u = v;
  cholesky_solve(lower_, u.span());
  return u;
}

Matrix SpdFactorization::reconstruct() const { return outer_gram(lower_); }

// ---- extremal eigenvalues -------------------------------------------------
//
// Shifted inverse iteration. Any shift τ for which M − τI admits a Cholesky
// factor lies below λ_min, so the iteration converges to the bottom of the
// spectrum. The shift starts at the Gershgorin lower bound and is moved up to
// θ − max(2‖r‖, 1e-6·scale) while it keeps factoring, which makes the
// contraction ratio (λ₁ − τ)/(λ₂ − τ) small even when λ₁ sits in a tight
// cluster (the difference-operator spectrum near zero, for instance).

double min_eig_symmetric(const Matrix& m, const LinalgTolerances& tol) {
  require_symmetric(m, tol, "min_eig_symmetric");
  const std::size_t n = m.rows();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "min_eig_symmetric: empty matrix");

  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += std::fabs(m(i, j));
    lo = std::min(lo, m(i, i) - radius);
    hi = std::max(hi, m(i, i) + radius);
  }
  const double scale = std::max(std::fabs(lo), std::fabs(hi));
  if (scale == 0.0) return 0.0;
  if (n == 1) return m(0, 0);

  double safe_shift = lo - 1e-3 * scale;
  auto factor = cholesky_lower(m, safe_shift);
  if (!factor) throw Error(ErrorKind::NoConvergence, "min_eig_symmetric: Gershgorin shift failed");

  std::mt19937_64 gen(0x5eed5eedULL);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
  v *= 1.0 / norm(v);

  double theta = dot(v, multiply(m, v));
  double theta_prev = INFINITY;
  constexpr std::size_t kReshiftEvery = 4;

  for (std::size_t it = 1; it <= tol.eig_max_iters; ++it) {
    cholesky_solve(*factor, v.span());
    const double len = norm(v);
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorKind::NoConvergence, "min_eig_symmetric: iteration broke down");
    }
    v *= 1.0 / len;
    const Vector mv = multiply(m, v);
    theta = dot(v, mv);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = mv[i] - theta * v[i];
      r2 += d * d;
    }
    const double residual = std::sqrt(r2);

    const double drift = std::fabs(theta - theta_prev);
    const bool settled = drift <= tol.eig_rayleigh_tol * std::max(std::fabs(theta), 1e-6 * scale) &&
                         residual <= std::sqrt(tol.eig_rayleigh_tol) * scale;
    if (settled || residual <= tol.eig_rayleigh_tol * 1e-3 * scale) {
      return theta;
    }
    theta_prev = theta;

    if (it % kReshiftEvery == 0) {
      const double candidate = theta - std::max(2.0 * residual, 1e-6 * scale);
      if (candidate > safe_shift) {
        if (auto f = cholesky_lower(m, candidate)) {
          safe_shift = candidate;
          factor = std::move(f);
        }
      }
    }
  }
  throw Error(ErrorKind::NoConvergence, "min_eig_symmetric: iteration budget exhausted");
}

double max_eig_symmetric(const Matrix& m, const LinalgTolerances& tol) {
  return -min_eig_symmetric(-1.0 * m, tol);
}

double spectral_norm(const Matrix& m, const LinalgTolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Matrix g = m.rows() >= m.cols() ? gram(m) : outer_gram(m);
  return std::sqrt(std::max(0.0, max_eig_symmetric(g, tol)));
}

}  // namespace badmm
