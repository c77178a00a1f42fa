#include "badmm/bregman.hpp"

#include <cmath>
#include <limits>

#include "badmm/errors.hpp"

namespace badmm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

BregmanGenerator squared_norm(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidParameter, "squared-norm scale must be finite and >= 0");
  }
  BregmanGenerator g;
  g.name = "squared_norm";
  g.value = [scale](const Vector& x) { return 0.5 * scale * squared_norm(x); };
  g.gradient = [scale](const Vector& x) { return scale * x; };
  g.strong_convexity = scale;
  g.grad_lipschitz = scale;
  g.hessian = QuadraticHessian{scale, std::nullopt};
  return g;
}

BregmanGenerator mahalanobis(const Matrix& q) {
  SpdFactorization::factor(q);  // throws NotSpd
  BregmanGenerator g;
  g.name = "mahalanobis";
  g.value = [q](const Vector& x) { return 0.5 * dot(x, multiply(q, x)); };
  g.gradient = [q](const Vector& x) { return multiply(q, x); };
  g.strong_convexity = min_eig_symmetric(q);
  g.grad_lipschitz = max_eig_symmetric(q);
  g.hessian = QuadraticHessian{0.0, q};
  return g;
}

// φ(x) = −Σ log xᵢ
BregmanGenerator itakura_saito() {
  BregmanGenerator g;
  g.name = "itakura_saito";
  g.value = [](const Vector& x) {
    double s = 0.0;
    for (double v : x) s -= std::log(v);
    return s;
  };
  g.gradient = [](const Vector& x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = -1.0 / x[i];
    return out;
  };
  g.grad_lipschitz = kInf;
  g.domain = GeneratorDomain::PositiveOrthant;
  return g;
}

// φ(x) = Σ xᵢ log xᵢ
BregmanGenerator kullback_leibler() {
  BregmanGenerator g;
  g.name = "kullback_leibler";
  g.value = [](const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * std::log(v);
    return s;
  };
  g.gradient = [](const Vector& x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::log(x[i]) + 1.0;
    return out;
  };
  g.grad_lipschitz = kInf;
  g.domain = GeneratorDomain::PositiveOrthant;
  return g;
}

BregmanGenerator zero() {
  BregmanGenerator g;
  g.name = "zero";
  g.value = [](const Vector&) { return 0.0; };
  g.gradient = [](const Vector& x) { return Vector(x.size()); };
  g.hessian = QuadraticHessian{0.0, std::nullopt};
  return g;
}

}  // namespace

bool BregmanGenerator::in_domain(const Vector& x) const noexcept {
  if (!x.all_finite()) return false;
  if (domain == GeneratorDomain::PositiveOrthant) {
    for (double v : x)
      if (!(v > 0.0)) return false;
  }
  return true;
}

BregmanGenerator make_generator(const GeneratorSpec& spec) {
  return std::visit(overloaded{
                        [](const generator::SquaredNorm& s) { return squared_norm(s.scale); },
                        [](const generator::Mahalanobis& m) { return mahalanobis(m.q); },
                        [](const generator::ItakuraSaito&) { return itakura_saito(); },
                        [](const generator::KullbackLeibler&) { return kullback_leibler(); },
                        [](const generator::Zero&) { return zero(); },
                    },
                    spec);
}

double bregman_distance(const BregmanGenerator& gen, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "bregman_distance: argument lengths differ");
  }
  if (!gen.in_domain(x) || !gen.in_domain(y)) {
    throw Error(ErrorKind::DomainViolation, "bregman_distance: point outside " + gen.name +
                                                " domain");
  }
  return gen.value(x) - gen.value(y) - dot(gen.gradient(y), x - y);
}

BregmanGenerator linearizing_generator(const Matrix& b, double alpha, double mu, const Vector& c) {
  if (c.size() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "linearizing_generator: c must have B.rows entries");
  }
  const double norm_b = spectral_norm(b);
  const double floor = alpha * norm_b * norm_b;
  if (!(mu > floor)) {
    throw Error(ErrorKind::ConvexityViolation,
                "linearizing generator needs mu > alpha*||B||^2 = " + std::to_string(floor));
  }
  BregmanGenerator g;
  g.name = "linearizing";
  g.value = [b, alpha, mu, c](const Vector& y) {
    return 0.5 * mu * squared_norm(y) - 0.5 * alpha * squared_norm(multiply(b, y) - c);
  };
  g.gradient = [b, alpha, mu, c](const Vector& y) {
    return mu * y - alpha * multiply_transposed(b, multiply(b, y) - c);
  };
  g.strong_convexity = mu - floor;
  g.grad_lipschitz = mu;
  g.hessian = QuadraticHessian{mu, -alpha * gram(b)};
  return g;
}

Vector linearized_prox_center(const Matrix& b, double alpha, double mu, const Vector& c,
                              const Vector& y_k) {
  return y_k - (alpha / mu) * multiply_transposed(b, multiply(b, y_k) - c);
}

}  // namespace badmm
