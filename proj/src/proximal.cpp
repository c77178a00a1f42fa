#include "badmm/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "badmm/errors.hpp"
#include "badmm/kernels.hpp"

namespace badmm {
namespace {

void check_args(double v, double kappa) {
  if (!std::isfinite(v) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::InvalidParameter, "shrinkage arguments must be finite");
  }
  if (kappa < 0.0) throw Error(ErrorKind::InvalidParameter, "shrinkage threshold must be >= 0");
}

const double kCbrt54Over4 = std::cbrt(54.0) / 4.0;

// Nonzero branch of half shrinkage; caller guarantees |v| > half_threshold(kappa) > 0.
double half_branch(double v, double kappa) {
  const double a = std::fabs(v);
  const double c = (kappa / 8.0) * std::pow(a / 3.0, -1.5);
  const double phi = std::acos(std::min(1.0, c));
  return (2.0 * v / 3.0) * (1.0 + std::cos((2.0 / 3.0) * (std::numbers::pi - phi)));
}

}  // namespace

double soft_shrink_scalar(double v, double kappa) {
  check_args(v, kappa);
  const double mag = std::fabs(v) - kappa;
  return mag > 0.0 ? std::copysign(mag, v) : 0.0;
}

double half_threshold(double kappa) { return kCbrt54Over4 * std::pow(kappa, 2.0 / 3.0); }

double half_shrink_scalar(double v, double kappa) {
  check_args(v, kappa);
  if (kappa == 0.0) return v;
  // Strict inequality: at |v| = t* both 0 and 2v/3 are minimizers; take 0.
  if (!(std::fabs(v) > half_threshold(kappa))) return 0.0;
  return half_branch(v, kappa);
}

Vector shrink_vector(const Vector& v, double kappa, ShrinkageKind kind) {
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw Error(ErrorKind::InvalidParameter, "shrinkage threshold must be finite and >= 0");
  }
  if (!v.all_finite()) throw Error(ErrorKind::InvalidParameter, "shrinkage input not finite");
  Vector out(v.size());
  switch (kind) {
    case ShrinkageKind::Soft:
      kernels::soft_shrink(v, kappa, out.span());
      break;
    case ShrinkageKind::Half:
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = half_shrink_scalar(v[i], kappa);
      break;
  }
  return out;
}

double prox_oracle_scalar(const std::function<double(double)>& objective, double lo, double hi,
                          std::size_t grid_points, double refine_tol) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidBracket, "prox oracle needs lo < hi");
  if (grid_points < 1000) {
    throw Error(ErrorKind::InvalidParameter, "prox oracle needs at least 1000 grid points");
  }
  const double h = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_val = INFINITY;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double f = objective(lo + h * static_cast<double>(i));
    if (f < best_val) {
      best_val = f;
      best = i;
    }
  }

  // Golden section inside the neighbouring cells of the best sample.
  double a = std::max(lo, lo + h * (static_cast<double>(best) - 1.0));
  double b = std::min(hi, lo + h * (static_cast<double>(best) + 1.0));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > refine_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double t = 0.5 * (a + b);
  double ft = objective(t);
  const double grid_t = lo + h * static_cast<double>(best);
  if (best_val < ft) {
    t = grid_t;
    ft = best_val;
  }
  if (lo <= 0.0 && 0.0 <= hi && objective(0.0) <= ft) return 0.0;
  return t;
}

}  // namespace badmm
