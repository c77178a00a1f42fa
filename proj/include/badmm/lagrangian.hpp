#pragma once

// Augmented Lagrangian
//   L_α(x, y, p) = f(x) + g(y) + ⟨p, Ax − By⟩ + (α/2)‖Ax − By‖²
// the auxiliary function L̂ = L_α + (σ₀/2)‖x − x̂‖², the analysis constants
// that appear in the descent estimates, and per-iteration checks of those
// estimates. The checks measure; they never stop a run.

#include "badmm/bregman.hpp"
#include "badmm/numerics.hpp"
#include "badmm/problems.hpp"

namespace badmm {

/// Which set of standing hypotheses the constants are computed for:
/// One needs B injective, Two needs ψ strongly convex.
enum class Assumption { One, Two };

struct AnalysisConstants {
  double ell_f = 0.0;
  double ell_phi = 0.0;
  double ell_psi = 0.0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu_b = 0.0;
  double alpha = 0.0;
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;  // NaN when μ_B = 0
  Assumption assumption = Assumption::One;
};

struct SigmaPair {
  double sigma0;
  double sigma1;
};

struct KappaPair {
  double kappa1;
  double kappa2;
};

/// σ₀, σ₁ for the chosen assumption. σ₁ may come out ≤ 0; that is reported, not rejected.
SigmaPair sigma_constants(const AnalysisConstants& c);

/// 4((ℓ_f + ℓ_φ)² + ℓ_φ²)/(μ₁μ₀)
double alpha_lower_bound(const AnalysisConstants& c);
/// c.alpha strictly above alpha_lower_bound(c)
bool alpha_rule_satisfied(const AnalysisConstants& c);

/// κ₁ = √2(ℓ_f + ℓ_φ)/√μ₀, κ₂ = √2(2κ₁ + α‖A‖)/(α√μ_B).
/// Throws InvalidParameter when μ_B ≤ 0.
KappaPair kappa_constants(const AnalysisConstants& c, double norm_a);

/// Measured constants for a run: ℓ_f from the loss, ℓ_φ/μ₁ from φ, ℓ_ψ/μ₂ from ψ,
/// μ₀ and μ_B from the problem, then σ and κ by the closed forms.
AnalysisConstants measure_constants(const CompositeProblem& problem, double alpha,
                                    const BregmanGenerator& phi, const BregmanGenerator& psi,
                                    Assumption assumption = Assumption::One);

struct AssumptionReport {
  bool a_full_row_rank = false;       // μ₀ > 0
  bool b_injective = false;           // μ_B > 0
  bool phi_strongly_convex = false;   // μ₁ > 0
  bool psi_strongly_convex = false;   // μ₂ > 0
  bool gradients_lipschitz = false;   // ℓ_f, ℓ_φ, ℓ_ψ finite
  bool alpha_rule = false;
  bool assumption_one() const noexcept {
    return a_full_row_rank && b_injective && phi_strongly_convex && gradients_lipschitz;
  }
  bool assumption_two() const noexcept {
    return a_full_row_rank && psi_strongly_convex && phi_strongly_convex && gradients_lipschitz;
  }
};

AssumptionReport check_assumptions(const AnalysisConstants& c);

double aug_lagrangian(const CompositeProblem& problem, double alpha, const Vector& x,
                      const Vector& y, const Vector& p);

double aux_function(const CompositeProblem& problem, double alpha, const Vector& x, const Vector& y,
                    const Vector& p, const Vector& x_prev, double sigma0);

struct Iterate {
  Vector x;
  Vector y;
  Vector p;
};

/// Signed margins; ≥ 0 means the inequality holds.
struct DescentMargins {
  double m10 = 0.0;   // x-step sufficient descent
  double m11 = 0.0;   // dual step bounded by primal steps
  double m_aux = 0.0; // auxiliary-function descent
  double lagrangian_current = 0.0;  // L_α(z^{k+1})
  double lagrangian_partial = 0.0;  // L_α(x^{k+1}, y^{k+1}, p^k)
  double aux_current = 0.0;         // L̂(ẑ^{k+1})
};

/// Margins for the step z^k → z^{k+1}; x_before is x^{k−1}.
DescentMargins descent_check(const CompositeProblem& problem, const AnalysisConstants& c,
                             const Vector& x_before, const Iterate& current, const Iterate& next);

struct StationarityResidual {
  double grad_x = 0.0;     // ‖∇f(x) + Aᵀp‖
  double subdiff_y = 0.0;  // dist(Bᵀp, ∂g(y))
  double primal = 0.0;     // ‖Ax − By‖
};

StationarityResidual stationarity_residual(const CompositeProblem& problem, const Vector& x,
                                           const Vector& y, const Vector& p);

}  // namespace badmm
