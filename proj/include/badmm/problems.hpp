#pragma once

// Composite problems  min f(x) + g(y)  s.t.  Ax = By  with f(x) = ‖Dx − b‖²
// and g an ℓ₁ or ℓ½ penalty, plus generators for the 1-D TV recovery
// experiment (difference operator, Gaussian sensing, piecewise-constant truth).

#include <cstdint>
#include <string_view>

#include "badmm/numerics.hpp"

namespace badmm {

enum class RegularizerKind { L1, LHalf };

std::string_view to_string(RegularizerKind k) noexcept;

class Regularizer {
 public:
  /// Throws InvalidParameter unless lambda > 0.
  Regularizer(RegularizerKind kind, double lambda);

  RegularizerKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }

  /// L1: λΣ|yᵢ|; LHalf: λΣ|yᵢ|^½
  double value(const Vector& y) const;
  /// argmin_y g(y) + (α/2)‖y − v‖²
  Vector prox(const Vector& v, double alpha) const;
  /// dist(u, ∂g(y)), componentwise sets combined in the 2-norm.
  double subdiff_dist(const Vector& u, const Vector& y) const;

 private:
  RegularizerKind kind_;
  double lambda_;
};

inline double regularizer_value(const Regularizer& r, const Vector& y) { return r.value(y); }
inline Vector regularizer_prox(const Regularizer& r, const Vector& v, double alpha) {
  return r.prox(v, alpha);
}
inline double regularizer_subdiff_dist(const Regularizer& r, const Vector& u, const Vector& y) {
  return r.subdiff_dist(u, y);
}

/// f(x) = ‖Dx − b‖². Caches DᵀD, Dᵀb and the gradient Lipschitz constant ℓ_f = 2λ_max(DᵀD).
class QuadraticLoss {
 public:
  QuadraticLoss(Matrix d, Vector b);

  const Matrix& d() const noexcept { return d_; }
  const Vector& b() const noexcept { return b_; }
  const Matrix& dtd() const noexcept { return dtd_; }
  const Vector& dtb() const noexcept { return dtb_; }
  double ell_f() const noexcept { return ell_f_; }
  std::size_t dimension() const noexcept { return d_.cols(); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  Matrix d_;
  Vector b_;
  Matrix dtd_;
  Vector dtb_;
  double ell_f_ = 0.0;
};

class CompositeProblem {
 public:
  /// Throws DimensionMismatch if A.rows ≠ B.rows or A.cols ≠ D.cols.
  CompositeProblem(QuadraticLoss loss, Regularizer reg, Matrix a, Matrix b);

  const QuadraticLoss& loss() const noexcept { return loss_; }
  const Regularizer& reg() const noexcept { return reg_; }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }

  std::size_t n_x() const noexcept { return a_.cols(); }
  std::size_t n_y() const noexcept { return b_.cols(); }
  std::size_t n_constraints() const noexcept { return a_.rows(); }

  /// λ_min(AAᵀ)
  double mu0() const noexcept { return mu0_; }
  /// λ_min(BᵀB)
  double mu_b() const noexcept { return mu_b_; }
  double norm_a() const noexcept { return norm_a_; }
  double norm_b() const noexcept { return norm_b_; }
  bool b_is_identity() const noexcept { return b_identity_; }

 private:
  QuadraticLoss loss_;
  Regularizer reg_;
  Matrix a_;
  Matrix b_;
  double mu0_ = 0.0;
  double mu_b_ = 0.0;
  double norm_a_ = 0.0;
  double norm_b_ = 0.0;
  bool b_identity_ = false;
};

struct GroundTruth {
  Vector x_star;
  Vector y_star;
};

/// (n−1)×n forward difference: row i has −1 at column i and +1 at column i+1.
Matrix difference_matrix(std::size_t n);

/// m×n i.i.d. N(0, 1/m) entries.
Matrix gaussian_matrix(std::size_t m, std::size_t n, std::uint64_t seed);

/// Length-n signal with exactly jump_count change points (distinct positions)
/// and segment levels uniform on [−amplitude, amplitude].
Vector piecewise_constant_signal(std::size_t n, std::size_t jump_count, double amplitude,
                                 std::uint64_t seed);

struct TvProblemParams {
  std::size_t n = 512;
  std::size_t m = 256;
  double lambda = 0.015;
  RegularizerKind reg_kind = RegularizerKind::LHalf;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;
  std::size_t jumps = 20;
  double amplitude = 1.0;
};

struct TvInstance {
  CompositeProblem problem;
  GroundTruth truth;
};

/// A = difference_matrix(n), B = I, D = gaussian_matrix(m, n, seed),
/// x* = piecewise_constant_signal(n, jumps, amplitude, seed + 1),
/// b = D x* + σ·N(0, I) drawn with seed + 2, y* = A x*.
TvInstance make_tv_problem(const TvProblemParams& params);

}  // namespace badmm
