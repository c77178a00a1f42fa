#pragma once

// Dense linear algebra used throughout the solver: row-major matrices,
// vectors, a Cholesky factorization that is computed once and solved many
// times, and extremal eigenvalues of symmetric matrices.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace badmm {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  /// Throws InvalidParameter on non-finite entries.
  explicit Vector(std::vector<double> values);
  Vector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<double> span() noexcept { return data_; }
  std::span<const double> span() const noexcept { return data_; }
  operator std::span<const double>() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  const std::vector<double>& values() const noexcept { return data_; }
  bool all_finite() const noexcept;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);

double dot(const Vector& a, const Vector& b);
double squared_norm(const Vector& a);
double norm(const Vector& a);
/// ‖a − b‖, without materializing the difference.
double distance(const Vector& a, const Vector& b);
/// Concatenation (used for the z = (x, y, p) stack).
Vector concat(std::initializer_list<const Vector*> parts);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Row-major data; throws DimensionMismatch / InvalidParameter on bad input.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }

  bool all_finite() const noexcept;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

/// M·x
Vector multiply(const Matrix& m, const Vector& x);
/// Mᵀ·x
Vector multiply_transposed(const Matrix& m, const Vector& x);
/// A·B
Matrix multiply(const Matrix& a, const Matrix& b);
/// AᵀA (cols × cols)
Matrix gram(const Matrix& a);
/// AAᵀ (rows × rows)
Matrix outer_gram(const Matrix& a);

/// Largest |M_ij − M_ji| divided by max(1, max |M_ij|).
double relative_asymmetry(const Matrix& m);
double frobenius_norm(const Matrix& m);

struct LinalgTolerances {
  double symmetry = 1e-12;
  std::size_t eig_max_iters = 10'000;
  double eig_rayleigh_tol = 1e-10;
};

/// Cholesky factor M = L·Lᵀ. Build once, solve many times.
class SpdFactorization {
 public:
  /// Throws NotSpd on a nonpositive pivot, DimensionMismatch/InvalidParameter on
  /// non-square or asymmetric input.
  static SpdFactorization factor(const Matrix& m, const LinalgTolerances& tol = {});

  std::size_t dimension() const noexcept { return n_; }
  Vector solve(const Vector& v) const;
  /// L·Lᵀ, for checking the factor.
  Matrix reconstruct() const;
  /// Lower-triangular factor, row-major.
  const Matrix& lower() const noexcept { return lower_; }

 private:
  SpdFactorization(std::size_t n, Matrix lower) : n_(n), lower_(std::move(lower)) {}

  std::size_t n_ = 0;
  Matrix lower_;
};

/// λ_min of a symmetric matrix. Throws NoConvergence when the iteration budget runs out.
double min_eig_symmetric(const Matrix& m, const LinalgTolerances& tol = {});
/// λ_max of a symmetric matrix.
double max_eig_symmetric(const Matrix& m, const LinalgTolerances& tol = {});
/// Largest singular value.
double spectral_norm(const Matrix& m, const LinalgTolerances& tol = {});

}  // namespace badmm
