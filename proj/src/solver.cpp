#include "badmm/solver.hpp"

#include <cmath>

#include "badmm/errors.hpp"

namespace badmm {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::ClosedFormSoft: return "closed_form_soft";
    case Strategy::ClosedFormHalf: return "closed_form_half";
    case Strategy::ProxLinearY: return "prox_linear";
  }
  return "unknown";
}

std::string_view to_string(Termination t) noexcept {
  return t == Termination::StepTolerance ? "step_tolerance" : "max_iterations";
}

SolverState SolverState::zeros(const CompositeProblem& problem) {
  SolverState s;
  s.x = Vector(problem.n_x());
  s.y = Vector(problem.n_y());
  s.p = Vector(problem.n_constraints());
  s.x_prev = s.x;
  return s;
}

SolverConfig SolverConfig::closed_form(RegularizerKind kind, double alpha, double mu) {
  SolverConfig c;
  c.alpha = alpha;
  c.phi = make_generator(generator::SquaredNorm{mu});
  c.psi = make_generator(generator::SquaredNorm{mu});
  c.strategy = kind == RegularizerKind::L1 ? Strategy::ClosedFormSoft : Strategy::ClosedFormHalf;
  c.prox_mu = mu;
  return c;
}

namespace {

Vector apply_hessian(const QuadraticHessian& h, const Vector& x) {
  Vector out = h.identity_scale * x;
  if (h.matrix) out += multiply(*h.matrix, x);
  return out;
}

const QuadraticHessian& require_quadratic(const BregmanGenerator& phi) {
  if (!phi.hessian) {
    throw Error(ErrorKind::SubproblemFailure,
                "closed-form x-step needs a quadratic phi; '" + phi.name + "' is not");
  }
  return *phi.hessian;
}

Vector apply_b(const CompositeProblem& problem, const Vector& y) {
  return problem.b_is_identity() ? y : multiply(problem.b(), y);
}

void check_state(const SolverState& s, const CompositeProblem& problem) {
  if (s.x.size() != problem.n_x() || s.y.size() != problem.n_y() ||
      s.p.size() != problem.n_constraints() || s.x_prev.size() != problem.n_x()) {
    throw Error(ErrorKind::DimensionMismatch, "solver state does not match the problem");
  }
}

void check_closed_form(const CompositeProblem& problem, Strategy strategy) {
  if (!problem.b_is_identity()) {
    throw Error(ErrorKind::StrategyMismatch, "closed-form y-step requires B = I");
  }
  const bool l1 = problem.reg().kind() == RegularizerKind::L1;
  if ((strategy == Strategy::ClosedFormSoft) != l1) {
    throw Error(ErrorKind::StrategyMismatch,
                std::string(to_string(strategy)) + " does not match regularizer " +
                    std::string(to_string(problem.reg().kind())));
  }
}

void check_prox_mu(const CompositeProblem& problem, double alpha, double mu) {
  const double floor = alpha * problem.norm_b() * problem.norm_b();
  if (!(mu > floor)) {
    throw Error(ErrorKind::ConvexityViolation,
                "prox-linear y-step needs mu > alpha*||B||^2 = " + std::to_string(floor));
  }
}

// x-subproblem gradient at x_next with multiplier p. With p^k and the penalty term this is
// the optimality residual; with p^{k+1} and no penalty it checks the multiplier identity.
double x_gradient_norm(const CompositeProblem& problem, const BregmanGenerator& phi, double alpha,
                       const Vector& x, const Vector& x_next, const Vector& y_next,
                       const Vector& p, bool with_penalty) {
  Vector g = problem.loss().gradient(x_next);
  Vector coupling = p;
  if (with_penalty) {
    Vector r = multiply(problem.a(), x_next);
    r -= apply_b(problem, y_next);
    coupling += alpha * r;
  }
  g += multiply_transposed(problem.a(), coupling);
  g += phi.gradient(x_next);
  g -= phi.gradient(x);
  return norm(g);
}

}  // namespace

Matrix x_update_matrix(const CompositeProblem& problem, double alpha, const BregmanGenerator& phi) {
  const QuadraticHessian& h = require_quadratic(phi);
  Matrix m = 2.0 * problem.loss().dtd();
  m += alpha * gram(problem.a());
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += h.identity_scale;
  if (h.matrix) m += *h.matrix;
  return m;
}

Vector closed_form_y_step(const SolverState& s, const CompositeProblem& problem,
                          const SolverConfig& config) {
  check_closed_form(problem, config.strategy);
  Vector v = multiply(problem.a(), s.x);
  v += (1.0 / config.alpha) * s.p;
  return problem.reg().prox(v, config.alpha);
}

Vector proxlinear_y_step(const SolverState& s, const CompositeProblem& problem,
                         const SolverConfig& config, double mu) {
  check_prox_mu(problem, config.alpha, mu);
  Vector c = multiply(problem.a(), s.x);
  c += (1.0 / config.alpha) * s.p;
  const Vector v = problem.b_is_identity()
                       ? s.y - (config.alpha / mu) * (s.y - c)
                       : linearized_prox_center(problem.b(), config.alpha, mu, c, s.y);
  return problem.reg().prox(v, mu);
}

Vector closed_form_x_step(const SolverState& s, const Vector& y_next,
                          const CompositeProblem& problem, const SolverConfig& config,
                          const SpdFactorization& cached) {
  const QuadraticHessian& h = require_quadratic(config.phi);
  Vector coupling = config.alpha * apply_b(problem, y_next);
  coupling -= s.p;
  Vector w = apply_hessian(h, s.x);
  w += multiply_transposed(problem.a(), coupling);
  w += 2.0 * problem.loss().dtb();
  return cached.solve(w);
}

// ---- BadmmSolver ----------------------------------------------------------

BadmmSolver::BadmmSolver(const CompositeProblem& problem, SolverConfig config)
    : problem_(&problem),
      config_(std::move(config)),
      factor_(SpdFactorization::factor(x_update_matrix(problem, config_.alpha, config_.phi))) {
  if (!(config_.alpha > 0.0)) throw Error(ErrorKind::InvalidParameter, "alpha must be > 0");
  if (config_.max_iters < 1) throw Error(ErrorKind::InvalidParameter, "max_iters must be >= 1");
  if (config_.strategy == Strategy::ProxLinearY) {
    check_prox_mu(problem, config_.alpha, config_.prox_mu);
    psi_ = linearizing_generator(problem.b(), config_.alpha, config_.prox_mu,
                                 Vector(problem.n_constraints()));
  } else {
    check_closed_form(problem, config_.strategy);
    psi_ = config_.psi;
  }
  constants_ = measure_constants(problem, config_.alpha, config_.phi, psi_, config_.assumption);
}

Vector BadmmSolver::y_step(const SolverState& s) const {
  return config_.strategy == Strategy::ProxLinearY
             ? proxlinear_y_step(s, *problem_, config_, config_.prox_mu)
             : closed_form_y_step(s, *problem_, config_);
}

Vector BadmmSolver::x_step(const SolverState& s, const Vector& y_next) const {
  return closed_form_x_step(s, y_next, *problem_, config_, factor_);
}

Vector BadmmSolver::dual_step(const Vector& p, const Vector& x_next, const Vector& y_next) const {
  Vector r = multiply(problem_->a(), x_next);
  r -= apply_b(*problem_, y_next);
  Vector out = p;
  out += config_.alpha * r;
  return out;
}

SolverState BadmmSolver::iterate(const SolverState& s) const {
  check_state(s, *problem_);
  SolverState next;
  next.y = y_step(s);
  next.x = x_step(s, next.y);
  next.p = dual_step(s.p, next.x, next.y);
  next.x_prev = s.x;
  next.k = s.k + 1;
  return next;
}

IterationRecord BadmmSolver::make_record(const SolverState& before, const SolverState& after,
                                         const std::optional<GroundTruth>& truth) const {
  const CompositeProblem& pb = *problem_;
  const double alpha = config_.alpha;
  IterationRecord r;
  r.k = after.k;
  r.dx = distance(after.x, before.x);
  r.dy = distance(after.y, before.y);
  r.dp = distance(after.p, before.p);
  r.dz = std::sqrt(r.dx * r.dx + r.dy * r.dy + r.dp * r.dp);
  r.l_alpha = aug_lagrangian(pb, alpha, after.x, after.y, after.p);
  r.l_hat = r.l_alpha + 0.5 * constants_.sigma0 * r.dx * r.dx;
  {
    Vector res = multiply(pb.a(), after.x);
    res -= apply_b(pb, after.y);
    r.primal_residual = norm(res);
  }
  if (truth) {
    r.mse_x = distance(truth->x_star, after.x) / static_cast<double>(after.x.size());
    r.mse_y = distance(truth->y_star, after.y) / static_cast<double>(after.y.size());
  }
  if (!config_.record_diagnostics) return r;

  const Iterate cur{before.x, before.y, before.p};
  const Iterate nxt{after.x, after.y, after.p};
  r.margins = descent_check(pb, constants_, before.x_prev, cur, nxt);
  r.stationarity = stationarity_residual(pb, after.x, after.y, after.p);

  StepChecks c;
  c.x_opt_grad = x_gradient_norm(pb, config_.phi, alpha, before.x, after.x, after.y, before.p, true);
  c.multiplier_identity = x_gradient_norm(pb, config_.phi, alpha, before.x, after.x, after.y, after.p, false);
  const double l_partial = r.margins->lagrangian_partial;
  c.dual_identity = std::fabs(r.l_alpha - l_partial - r.dp * r.dp / alpha);

  const double l_start = aug_lagrangian(pb, alpha, before.x, before.y, before.p);
  const double l_after_y = aug_lagrangian(pb, alpha, before.x, after.y, before.p);
  double y_obj = l_after_y;
  if (config_.strategy == Strategy::ProxLinearY) y_obj += bregman_distance(psi_, after.y, before.y);
  c.y_descent = l_start - y_obj;
  c.x_descent = l_after_y - (l_partial + bregman_distance(config_.phi, after.x, before.x));
  r.checks = c;
  return r;
}

SolveResult BadmmSolver::solve(const SolverState& init,
                               const std::optional<GroundTruth>& truth) const {
  check_state(init, *problem_);
  SolveResult out;
  out.constants = constants_;
  out.trace.reserve(config_.max_iters);
  SolverState state = init;
  for (std::size_t it = 0; it < config_.max_iters; ++it) {
    SolverState next = iterate(state);
    IterationRecord rec = make_record(state, next, truth);
    const double z_norm =
        std::sqrt(squared_norm(state.x) + squared_norm(state.y) + squared_norm(state.p));
    const bool converged = rec.dz <= config_.tol * (1.0 + z_norm);
    out.trace.push_back(std::move(rec));
    state = std::move(next);
    if (converged) {
      out.reason = Termination::StepTolerance;
      break;
    }
  }
  out.final_state = std::move(state);
  return out;
}

SolverState badmm_iterate(const SolverState& s, const CompositeProblem& problem,
                          const SolverConfig& config) {
  return BadmmSolver(problem, config).iterate(s);
}

SolveResult solve(const CompositeProblem& problem, const SolverConfig& config,
                  const SolverState& init, const std::optional<GroundTruth>& truth) {
  return BadmmSolver(problem, config).solve(init, truth);
}

}  // namespace badmm
