#include "badmm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "badmm/errors.hpp"
#include "badmm/proximal.hpp"
#include "badmm/rng.hpp"

namespace badmm {

std::string_view to_string(RegularizerKind k) noexcept {
  return k == RegularizerKind::L1 ? "l1" : "lhalf";
}

// ---- Regularizer ----------------------------------------------------------

Regularizer::Regularizer(RegularizerKind kind, double lambda) : kind_(kind), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidParameter, "regularization weight must be positive");
  }
}

double Regularizer::value(const Vector& y) const {
  double s = 0.0;
  if (kind_ == RegularizerKind::L1) {
    for (double v : y) s += std::fabs(v);
  } else {
    for (double v : y) s += std::sqrt(std::fabs(v));
  }
  return lambda_ * s;
}

Vector Regularizer::prox(const Vector& v, double alpha) const {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidParameter, "prox weight alpha must be > 0");
  return kind_ == RegularizerKind::L1 ? shrink_vector(v, lambda_ / alpha, ShrinkageKind::Soft)
                                      : shrink_vector(v, 2.0 * lambda_ / alpha, ShrinkageKind::Half);
}

double Regularizer::subdiff_dist(const Vector& u, const Vector& y) const {
  if (u.size() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "subdiff_dist: argument lengths differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double d = 0.0;
    if (y[i] != 0.0) {
      const double slope = kind_ == RegularizerKind::L1
                               ? lambda_ * std::copysign(1.0, y[i])
                               : lambda_ * std::copysign(1.0, y[i]) / (2.0 * std::sqrt(std::fabs(y[i])));
      d = u[i] - slope;
    } else if (kind_ == RegularizerKind::L1) {
      d = std::max(0.0, std::fabs(u[i]) - lambda_);
    }
    // LHalf at yᵢ = 0: the limiting subdifferential is all of ℝ.
    s += d * d;
  }
  return std::sqrt(s);
}

// ---- QuadraticLoss --------------------------------------------------------

QuadraticLoss::QuadraticLoss(Matrix d, Vector b) : d_(std::move(d)), b_(std::move(b)) {
  if (d_.rows() != b_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "loss: D.rows must equal len(b)");
  }
  dtd_ = gram(d_);
  dtb_ = multiply_transposed(d_, b_);
  const double s = spectral_norm(d_);
  ell_f_ = 2.0 * s * s;
}

double QuadraticLoss::value(const Vector& x) const {
  Vector r = multiply(d_, x);
  r -= b_;
  return squared_norm(r);
}

Vector QuadraticLoss::gradient(const Vector& x) const {
  Vector r = multiply(d_, x);
  r -= b_;
  return 2.0 * multiply_transposed(d_, r);
}

// ---- CompositeProblem -----------------------------------------------------

namespace {

bool is_identity(const Matrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

}  // namespace

CompositeProblem::CompositeProblem(QuadraticLoss loss, Regularizer reg, Matrix a, Matrix b)
    : loss_(std::move(loss)), reg_(reg), a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "problem: A.rows must equal B.rows");
  }
  if (a_.cols() != loss_.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "problem: A.cols must equal D.cols");
  }
  b_identity_ = is_identity(b_);
  mu0_ = min_eig_symmetric(outer_gram(a_));
  mu_b_ = b_identity_ ? 1.0 : min_eig_symmetric(gram(b_));
  norm_a_ = spectral_norm(a_);
  norm_b_ = b_identity_ ? 1.0 : spectral_norm(b_);
}

// ---- generators -----------------------------------------------------------

Matrix difference_matrix(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "difference_matrix needs n >= 2");
  Matrix a(n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a(i, i) = -1.0;
    a(i, i + 1) = 1.0;
  }
  return a;
}

Matrix gaussian_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw Error(ErrorKind::InvalidParameter, "gaussian_matrix needs m, n >= 1");
  Rng rng(seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(m));
  Matrix g(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = sd * rng.normal();
  return g;
}

Vector piecewise_constant_signal(std::size_t n, std::size_t jump_count, double amplitude,
                                 std::uint64_t seed) {
  if (jump_count < 1 || jump_count >= n) {
    throw Error(ErrorKind::InvalidParameter, "piecewise signal needs 1 <= jump_count < n");
  }
  if (!(amplitude > 0.0)) throw Error(ErrorKind::InvalidParameter, "amplitude must be > 0");
  Rng rng(seed);

  // Change point c means x[c] ≠ x[c − 1]; candidates are 1..n−1.
  std::vector<std::size_t> positions(n - 1);
  std::iota(positions.begin(), positions.end(), std::size_t{1});
  for (std::size_t i = 0; i < jump_count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(positions.size() - i));
    std::swap(positions[i], positions[j]);
  }
  positions.resize(jump_count);
  std::sort(positions.begin(), positions.end());

  Vector x(n);
  double level = rng.uniform(-amplitude, amplitude);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < positions.size() && positions[next] == i) {
      double fresh;
      do {
        fresh = rng.uniform(-amplitude, amplitude);
      } while (fresh == level);
      level = fresh;
      ++next;
    }
    x[i] = level;
  }
  return x;
}

TvInstance make_tv_problem(const TvProblemParams& p) {
  Matrix a = difference_matrix(p.n);
  Matrix d = gaussian_matrix(p.m, p.n, p.seed);
  Vector x_star = piecewise_constant_signal(p.n, p.jumps, p.amplitude, p.seed + 1);
  Vector b = multiply(d, x_star);
  if (p.noise_sigma > 0.0) {
    Rng noise(p.seed + 2);
    for (double& v : b) v += p.noise_sigma * noise.normal();
  } else if (p.noise_sigma < 0.0) {
    throw Error(ErrorKind::InvalidParameter, "noise_sigma must be >= 0");
  }
  Vector y_star = multiply(a, x_star);
  CompositeProblem problem(QuadraticLoss(std::move(d), std::move(b)),
                           Regularizer(p.reg_kind, p.lambda), std::move(a),
                           Matrix::identity(p.n - 1));
  return TvInstance{std::move(problem), GroundTruth{std::move(x_star), std::move(y_star)}};
}

}  // namespace badmm
