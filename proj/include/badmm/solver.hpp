#pragma once

// Bregman ADMM for  min f(x) + g(y)  s.t.  Ax = By:
//
//   y^{k+1} = argmin_y L_α(x^k, y, p^k) + Δ_ψ(y, y^k)
//   x^{k+1} = argmin_x L_α(x, y^{k+1}, p^k) + Δ_φ(x, x^k)
//   p^{k+1} = p^k + α(Ax^{k+1} − By^{k+1})
//
// The y-update comes first; the order is not configurable.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "badmm/bregman.hpp"
#include "badmm/lagrangian.hpp"
#include "badmm/numerics.hpp"
#include "badmm/problems.hpp"

namespace badmm {

enum class Strategy {
  ClosedFormSoft,  // ℓ₁, B = I: y = soft(Ax + p/α, λ/α)
  ClosedFormHalf,  // ℓ½, B = I: y = half(Ax + p/α, 2λ/α)
  ProxLinearY,     // any B: linearizing ψ, y = prox of g at the linearized center
};

std::string_view to_string(Strategy s) noexcept;

struct SolverState {
  Vector x;
  Vector y;
  Vector p;
  Vector x_prev;
  std::size_t k = 0;

  /// x = 0, y = A·0 = 0, p = 0, x_prev = x.
  static SolverState zeros(const CompositeProblem& problem);
};

struct SolverConfig {
  double alpha = 10.0;
  std::size_t max_iters = 5000;
  double tol = 1e-8;
  BregmanGenerator phi = make_generator(generator::SquaredNorm{10.0});
  /// Used by the closed-form strategies only as metadata for the analysis
  /// constants (their y-update has no ψ term). ProxLinearY builds its own ψ.
  BregmanGenerator psi = make_generator(generator::SquaredNorm{10.0});
  Strategy strategy = Strategy::ClosedFormHalf;
  /// μ of the linearizing ψ for ProxLinearY; must exceed α‖B‖².
  double prox_mu = 0.0;
  bool record_diagnostics = true;
  Assumption assumption = Assumption::One;

  /// φ = ψ = (μ/2)‖·‖² with the closed-form strategy matching `kind`.
  static SolverConfig closed_form(RegularizerKind kind, double alpha, double mu);
};

/// Exactness checks of one step; all should be ~0 (or ≥ 0 for the descents).
struct StepChecks {
  double x_opt_grad = 0.0;      // ‖∇ of the x-subproblem objective at x^{k+1}‖
  double multiplier_identity = 0.0;      // ‖Aᵀp^{k+1} + ∇f(x^{k+1}) + ∇φ(x^{k+1}) − ∇φ(x^k)‖
  double dual_identity = 0.0;   // |L(z^{k+1}) − L(x^{k+1}, y^{k+1}, p^k) − ‖Δp‖²/α|
  double y_descent = 0.0;       // y-subproblem objective decrease (≥ 0 expected)
  double x_descent = 0.0;       // x-subproblem objective decrease (≥ 0 expected)
};

struct IterationRecord {
  std::size_t k = 0;  // iterations completed; the record describes z^k
  double l_alpha = 0.0;
  double l_hat = 0.0;
  double primal_residual = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dp = 0.0;
  double dz = 0.0;
  std::optional<double> mse_x;
  std::optional<double> mse_y;
  std::optional<DescentMargins> margins;
  std::optional<StationarityResidual> stationarity;
  std::optional<StepChecks> checks;
};

enum class Termination { StepTolerance, MaxIterations };
std::string_view to_string(Termination t) noexcept;

struct SolveResult {
  SolverState final_state;
  std::vector<IterationRecord> trace;
  Termination reason = Termination::MaxIterations;
  AnalysisConstants constants;
};

/// Binds a problem and a configuration; factors the x-update matrix
/// 2DᵀD + αAᵀA + ∇²φ once and reuses it for every step.
class BadmmSolver {
 public:
  /// Throws StrategyMismatch (closed form with B ≠ I or wrong regularizer),
  /// ConvexityViolation (ProxLinearY with μ ≤ α‖B‖²), SubproblemFailure
  /// (φ without constant Hessian), NotSpd (singular x-update matrix).
  BadmmSolver(const CompositeProblem& problem, SolverConfig config);

  const CompositeProblem& problem() const noexcept { return *problem_; }
  const SolverConfig& config() const noexcept { return config_; }
  const AnalysisConstants& constants() const noexcept { return constants_; }
  const SpdFactorization& x_factor() const noexcept { return factor_; }
  const BregmanGenerator& effective_psi() const noexcept { return psi_; }

  Vector y_step(const SolverState& s) const;
  Vector x_step(const SolverState& s, const Vector& y_next) const;
  Vector dual_step(const Vector& p, const Vector& x_next, const Vector& y_next) const;

  /// One y → x → p sweep.
  SolverState iterate(const SolverState& s) const;

  /// Iterate until ‖z^{k+1} − z^k‖ ≤ tol·(1 + ‖z^k‖) or max_iters.
  SolveResult solve(const SolverState& init,
                    const std::optional<GroundTruth>& truth = std::nullopt) const;

 private:
  IterationRecord make_record(const SolverState& before, const SolverState& after,
                              const std::optional<GroundTruth>& truth) const;

  const CompositeProblem* problem_;
  SolverConfig config_;
  BregmanGenerator psi_;
  AnalysisConstants constants_;
  SpdFactorization factor_;
};

// Free-function entry points.

/// y = shrink(A·x^k + p^k/α) at λ/α (soft) or 2λ/α (half). Requires B = I.
Vector closed_form_y_step(const SolverState& s, const CompositeProblem& problem,
                          const SolverConfig& config);
/// Solves (2DᵀD + αAᵀA + ∇²φ)·x = ∇²φ·x^k + αAᵀB·y^{k+1} + 2Dᵀb − Aᵀp^k.
Vector closed_form_x_step(const SolverState& s, const Vector& y_next,
                          const CompositeProblem& problem, const SolverConfig& config,
                          const SpdFactorization& cached);
/// c = A·x^k + p^k/α, v = y^k − (α/μ)Bᵀ(B·y^k − c), y = prox_{g/μ}(v).
Vector proxlinear_y_step(const SolverState& s, const CompositeProblem& problem,
                         const SolverConfig& config, double mu);
/// Builds the x-update matrix 2DᵀD + αAᵀA + ∇²φ. Throws SubproblemFailure for non-quadratic φ.
Matrix x_update_matrix(const CompositeProblem& problem, double alpha, const BregmanGenerator& phi);

SolverState badmm_iterate(const SolverState& s, const CompositeProblem& problem,
                          const SolverConfig& config);

SolveResult solve(const CompositeProblem& problem, const SolverConfig& config,
                  const SolverState& init, const std::optional<GroundTruth>& truth = std::nullopt);

}  // namespace badmm
