#pragma once

// Scalar and componentwise shrinkage operators.
//
//   soft:  argmin_t  κ|t|     + ½(t − v)²   = sign(v)·max(|v| − κ, 0)
//   half:  argmin_t  κ|t|^½   +  (t − v)²   (closed form, zero for |v| ≤ t*(κ))
//
// The two operators use different quadratic weights on purpose: with them the
// ℓ₁ and ℓ½ y-updates of the TV experiment are soft(·, λ/α) and half(·, 2λ/α).

#include <cstddef>
#include <functional>

#include "badmm/numerics.hpp"

namespace badmm {

enum class ShrinkageKind { Soft, Half };

double soft_shrink_scalar(double v, double kappa);
double half_shrink_scalar(double v, double kappa);

/// Zero-branch threshold of half shrinkage: (54^{1/3}/4)·κ^{2/3}.
double half_threshold(double kappa);

/// Componentwise shrinkage; Soft goes through the vectorized kernel.
Vector shrink_vector(const Vector& v, double kappa, ShrinkageKind kind);

/// Brute-force scalar minimizer: best of `grid_points` uniform samples on
/// [lo, hi] (plus t = 0), refined by golden section to width ≤ refine_tol.
/// Reference implementation for tests; throws InvalidBracket if lo ≥ hi.
double prox_oracle_scalar(const std::function<double(double)>& objective, double lo, double hi,
                          std::size_t grid_points = 20'001, double refine_tol = 1e-9);

}  // namespace badmm
