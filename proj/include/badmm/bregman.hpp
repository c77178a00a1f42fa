#pragma once

// Bregman generators and the distance
//   Δ_φ(x, y) = φ(x) − φ(y) − ⟨∇φ(y), x − y⟩.

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "badmm/numerics.hpp"

namespace badmm {

enum class GeneratorDomain { AllReals, PositiveOrthant };

/// Constant Hessian of a quadratic generator: identity_scale·I + matrix (if any).
struct QuadraticHessian {
  double identity_scale = 0.0;
  std::optional<Matrix> matrix;
};

struct BregmanGenerator {
  std::string name;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double strong_convexity = 0.0;  // modulus δ
  double grad_lipschitz = 0.0;    // may be +inf for generators without a global bound
  GeneratorDomain domain = GeneratorDomain::AllReals;
  /// Set for quadratic generators; the solver needs it for closed-form steps.
  std::optional<QuadraticHessian> hessian;

  bool in_domain(const Vector& x) const noexcept;
};

namespace generator {
struct SquaredNorm {
  double scale;  // φ = (scale/2)‖x‖²
};
struct Mahalanobis {
  Matrix q;  // φ = ½⟨Qx, x⟩, Q SPD
};
struct ItakuraSaito {};
struct KullbackLeibler {};
struct Zero {};
}  // namespace generator

using GeneratorSpec = std::variant<generator::SquaredNorm, generator::Mahalanobis,
                                   generator::ItakuraSaito, generator::KullbackLeibler,
                                   generator::Zero>;

/// Throws NotSpd for a Mahalanobis Q that is not positive definite and
/// InvalidParameter for a negative SquaredNorm scale.
BregmanGenerator make_generator(const GeneratorSpec& spec);

/// Throws DimensionMismatch on unequal lengths, DomainViolation outside the domain.
double bregman_distance(const BregmanGenerator& gen, const Vector& x, const Vector& y);

/// ψ(y) = (μ/2)‖y‖² − (α/2)‖By − c‖². Adding Δ_ψ(·, yᵏ) to the y-subproblem
/// cancels the coupling through B, leaving g(y) + (μ/2)‖y − v‖² with v from
/// linearized_prox_center(). Throws ConvexityViolation unless μ > α‖B‖².
BregmanGenerator linearizing_generator(const Matrix& b, double alpha, double mu, const Vector& c);

/// v = yᵏ − (α/μ)·Bᵀ(B·yᵏ − c)
Vector linearized_prox_center(const Matrix& b, double alpha, double mu, const Vector& c,
                              const Vector& y_k);

}  // namespace badmm
