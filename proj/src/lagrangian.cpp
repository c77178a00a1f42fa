#include "badmm/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "badmm/errors.hpp"

namespace badmm {
namespace {

void check_dims(const CompositeProblem& problem, const Vector& x, const Vector& y,
                const Vector& p) {
  if (x.size() != problem.n_x() || y.size() != problem.n_y() ||
      p.size() != problem.n_constraints()) {
    throw Error(ErrorKind::DimensionMismatch, "iterate dimensions do not match the problem");
  }
}

Vector constraint_residual(const CompositeProblem& problem, const Vector& x, const Vector& y) {
  Vector r = multiply(problem.a(), x);
  if (problem.b_is_identity()) {
    r -= y;
  } else {
    r -= multiply(problem.b(), y);
  }
  return r;
}

}  // namespace

SigmaPair sigma_constants(const AnalysisConstants& c) {
  const double coupling = c.alpha * c.mu0;
  const double s = c.ell_f + c.ell_phi;
  const double lag = 2.0 * c.ell_phi * c.ell_phi / coupling;
  const double base = c.mu1 / 2.0 - 2.0 * s * s / coupling - lag;
  if (c.assumption == Assumption::One) return {lag, base};
  return {2.0 * lag, std::min(c.mu2 / 2.0, base)};
}

double alpha_lower_bound(const AnalysisConstants& c) {
  const double s = c.ell_f + c.ell_phi;
  return 4.0 * (s * s + c.ell_phi * c.ell_phi) / (c.mu1 * c.mu0);
}

bool alpha_rule_satisfied(const AnalysisConstants& c) { return c.alpha > alpha_lower_bound(c); }

KappaPair kappa_constants(const AnalysisConstants& c, double norm_a) {
  if (!(c.mu_b > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "kappa2 needs an injective B (mu_B > 0)");
  }
  const double k1 = std::sqrt(2.0) * (c.ell_f + c.ell_phi) / std::sqrt(c.mu0);
  const double k2 = std::sqrt(2.0) * (2.0 * k1 + c.alpha * norm_a) / (c.alpha * std::sqrt(c.mu_b));
  return {k1, k2};
}

AnalysisConstants measure_constants(const CompositeProblem& problem, double alpha,
                                    const BregmanGenerator& phi, const BregmanGenerator& psi,
                                    Assumption assumption) {
  AnalysisConstants c;
  c.ell_f = problem.loss().ell_f();
  c.ell_phi = phi.grad_lipschitz;
  c.ell_psi = psi.grad_lipschitz;
  c.mu0 = problem.mu0();
  c.mu1 = phi.strong_convexity;
  c.mu2 = psi.strong_convexity;
  c.mu_b = problem.mu_b();
  c.alpha = alpha;
  c.assumption = assumption;
  const SigmaPair s = sigma_constants(c);
  c.sigma0 = s.sigma0;
  c.sigma1 = s.sigma1;
  if (c.mu_b > 0.0) {
    const KappaPair k = kappa_constants(c, problem.norm_a());
    c.kappa1 = k.kappa1;
    c.kappa2 = k.kappa2;
  } else {
    c.kappa1 = std::sqrt(2.0) * (c.ell_f + c.ell_phi) / std::sqrt(c.mu0);
    c.kappa2 = std::numeric_limits<double>::quiet_NaN();
  }
  return c;
}

AssumptionReport check_assumptions(const AnalysisConstants& c) {
  AssumptionReport r;
  r.a_full_row_rank = c.mu0 > 0.0;
  r.b_injective = c.mu_b > 0.0;
  r.phi_strongly_convex = c.mu1 > 0.0;
  r.psi_strongly_convex = c.mu2 > 0.0;
  r.gradients_lipschitz =
      std::isfinite(c.ell_f) && std::isfinite(c.ell_phi) && std::isfinite(c.ell_psi);
  r.alpha_rule = r.a_full_row_rank && r.phi_strongly_convex && alpha_rule_satisfied(c);
  return r;
}

double aug_lagrangian(const CompositeProblem& problem, double alpha, const Vector& x,
                      const Vector& y, const Vector& p) {
  check_dims(problem, x, y, p);
  const Vector r = constraint_residual(problem, x, y);
  return problem.loss().value(x) + problem.reg().value(y) + dot(p, r) +
         0.5 * alpha * squared_norm(r);
}

double aux_function(const CompositeProblem& problem, double alpha, const Vector& x, const Vector& y,
                    const Vector& p, const Vector& x_prev, double sigma0) {
  if (x_prev.size() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "aux_function: x_prev length differs from x");
  }
  const double d = distance(x, x_prev);
  return aug_lagrangian(problem, alpha, x, y, p) + 0.5 * sigma0 * d * d;
}

DescentMargins descent_check(const CompositeProblem& problem, const AnalysisConstants& c,
                             const Vector& x_before, const Iterate& current, const Iterate& next) {
  check_dims(problem, current.x, current.y, current.p);
  check_dims(problem, next.x, next.y, next.p);
  if (x_before.size() != problem.n_x()) {
    throw Error(ErrorKind::DimensionMismatch, "descent_check: lagged x has wrong length");
  }
  const double alpha = c.alpha;
  const double dx = distance(next.x, current.x);
  const double dx_lag = distance(current.x, x_before);
  const double dp = distance(next.p, current.p);
  const double dy = distance(next.y, current.y);

  DescentMargins m;
  const double l_before_x = aug_lagrangian(problem, alpha, current.x, next.y, current.p);
  m.lagrangian_partial = aug_lagrangian(problem, alpha, next.x, next.y, current.p);
  m.m10 = l_before_x - m.lagrangian_partial - 0.5 * c.mu1 * dx * dx;

  const double s = c.ell_f + c.ell_phi;
  const double rhs = (2.0 * s * s / c.mu0) * dx * dx + (2.0 * c.ell_phi * c.ell_phi / c.mu0) * dx_lag * dx_lag;
  m.m11 = rhs - dp * dp;

  m.lagrangian_current = aug_lagrangian(problem, alpha, next.x, next.y, next.p);
  const double aux_prev = aug_lagrangian(problem, alpha, current.x, current.y, current.p) +
                          0.5 * c.sigma0 * dx_lag * dx_lag;
  m.aux_current = m.lagrangian_current + 0.5 * c.sigma0 * dx * dx;
  const double step = c.assumption == Assumption::One ? dx * dx : dx * dx + dy * dy;
  m.m_aux = aux_prev - m.aux_current - c.sigma1 * step;
  return m;
}

StationarityResidual stationarity_residual(const CompositeProblem& problem, const Vector& x,
                                           const Vector& y, const Vector& p) {
  check_dims(problem, x, y, p);
  StationarityResidual r;
  Vector g = problem.loss().gradient(x);
  g += multiply_transposed(problem.a(), p);
  r.grad_x = norm(g);
  const Vector btp = problem.b_is_identity() ? p : multiply_transposed(problem.b(), p);
  r.subdiff_y = problem.reg().subdiff_dist(btp, y);
  r.primal = norm(constraint_residual(problem, x, y));
  return r;
}

}  // namespace badmm
