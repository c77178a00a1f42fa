#include <doctest.h>

#include <cmath>
#include <numbers>

#include "badmm/problems.hpp"
#include "badmm/proximal.hpp"
#include "test_util.hpp"

using namespace badmm;
using testutil::error_kind_of;

TEST_CASE("regularizer values") {
  CHECK(Regularizer(RegularizerKind::L1, 2).value(Vector{1, -3}) == 8.0);
  CHECK(Regularizer(RegularizerKind::LHalf, 1).value(Vector{4, 9}) == 5.0);
  CHECK(Regularizer(RegularizerKind::L1, 2).value(Vector(3)) == 0.0);
  CHECK(Regularizer(RegularizerKind::LHalf, 2).value(Vector(3)) == 0.0);
  CHECK(error_kind_of([] { Regularizer(RegularizerKind::L1, 0.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("regularizer prox thresholds") {
  const Regularizer l1(RegularizerKind::L1, 0.015);
  CHECK(l1.prox(Vector{0.0015, -0.0015, 0.001}, 10) == Vector(3));
  CHECK(l1.prox(Vector{0.0025}, 10)[0] == doctest::Approx(0.001));

  const Regularizer lh(RegularizerKind::LHalf, 0.015);
  const double ts = std::cbrt(54.0) / 4.0 * std::pow(0.003, 2.0 / 3.0);
  CHECK(ts == doctest::Approx(0.019657).epsilon(1e-5));
  CHECK(half_threshold(2 * 0.015 / 10) == doctest::Approx(ts));
  CHECK(lh.prox(Vector{0.01}, 10) == Vector{0.0});
  CHECK(lh.prox(Vector{ts * (1 + 1e-6)}, 10)[0] != 0.0);
}

TEST_CASE("regularizer prox is the minimizer of g + (alpha/2)|y - v|^2") {
  Rng rng(12);
  for (RegularizerKind kind : {RegularizerKind::L1, RegularizerKind::LHalf}) {
    for (int rep = 0; rep < 10; ++rep) {
      const double lambda = rng.uniform(0.05, 2.0);
      const double alpha = rng.uniform(0.5, 5.0);
      const Regularizer g(kind, lambda);
      const Vector v = testutil::random_vector(rng, 20, 1.5);
      const Vector y = g.prox(v, alpha);
      for (std::size_t i = 0; i < v.size(); ++i) {
        auto obj = [&](double t) {
          const double pen = kind == RegularizerKind::L1 ? std::fabs(t) : std::sqrt(std::fabs(t));
          return lambda * pen + 0.5 * alpha * (t - v[i]) * (t - v[i]);
        };
        CHECK(std::fabs(y[i] - prox_oracle_scalar(obj, -10, 10)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("subdifferential distance") {
  const Regularizer l1(RegularizerKind::L1, 1);
  CHECK(l1.subdiff_dist(Vector{1}, Vector{1}) == 0.0);
  CHECK(l1.subdiff_dist(Vector{1.5}, Vector{0}) == doctest::Approx(0.5));
  CHECK(l1.subdiff_dist(Vector{0.3}, Vector{0}) == 0.0);
  CHECK(l1.subdiff_dist(Vector{0.0}, Vector{-2}) == doctest::Approx(1.0));
  const Regularizer lh(RegularizerKind::LHalf, 1);
  CHECK(lh.subdiff_dist(Vector{0}, Vector{4}) == doctest::Approx(0.25));
  CHECK(lh.subdiff_dist(Vector{123.0}, Vector{0}) == 0.0);
  // componentwise distances combine in the 2-norm
  CHECK(l1.subdiff_dist(Vector{4, 3}, Vector{3, -1}) == doctest::Approx(std::hypot(3.0, 4.0)));
  CHECK(error_kind_of([&] { l1.subdiff_dist(Vector{1}, Vector{1, 2}); }) ==
        ErrorKind::DimensionMismatch);

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const double lambda = rng.uniform(0.1, 2);
    Vector y = testutil::random_vector(rng, 6);
    y[0] = 0.0;
    Vector u1(6), uh(6);
    for (std::size_t i = 0; i < 6; ++i) {
      const double s = y[i] > 0 ? 1.0 : -1.0;
      u1[i] = y[i] == 0.0 ? rng.uniform(-lambda, lambda) : lambda * s;
      uh[i] = y[i] == 0.0 ? rng.normal() * 10 : lambda * s / (2 * std::sqrt(std::fabs(y[i])));
    }
    CHECK(Regularizer(RegularizerKind::L1, lambda).subdiff_dist(u1, y) <= 1e-14);
    CHECK(Regularizer(RegularizerKind::LHalf, lambda).subdiff_dist(uh, y) <= 1e-14);
  }
}

TEST_CASE("difference matrix") {
  const Matrix a = difference_matrix(4);
  CHECK(a == Matrix{{-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}});
  CHECK(multiply(a, Vector(4, 2.5)) == Vector(3));
  const Matrix big = difference_matrix(512);
  CHECK(big.rows() == 511);
  CHECK(big.cols() == 512);
  CHECK(error_kind_of([] { difference_matrix(1); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("gaussian matrix statistics and determinism") {
  const Matrix d = gaussian_matrix(256, 512, 1);
  CHECK(d == gaussian_matrix(256, 512, 1));
  CHECK_FALSE(d == gaussian_matrix(256, 512, 2));
  double sum = 0.0, sq = 0.0;
  const double count = 256.0 * 512.0;
  for (std::size_t i = 0; i < 256; ++i)
    for (std::size_t j = 0; j < 512; ++j) {
      sum += d(i, j);
      sq += d(i, j) * d(i, j);
    }
  const double mean = sum / count;
  const double var = sq / count - mean * mean;
  CHECK(var >= 0.8 / 256);
  CHECK(var <= 1.2 / 256);
  CHECK(std::fabs(mean) <= 3.0 * (1.0 / std::sqrt(256.0)) / std::sqrt(count));
}

TEST_CASE("piecewise constant signal") {
  const Vector s = piecewise_constant_signal(4, 1, 1.0, 9);
  int changes = 0;
  for (std::size_t i = 1; i < 4; ++i) changes += s[i] != s[i - 1];
  CHECK(changes == 1);
  for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
    const Vector x = piecewise_constant_signal(512, 20, 1.0, seed);
    CHECK(x == piecewise_constant_signal(512, 20, 1.0, seed));
    const Vector jumps = multiply(difference_matrix(512), x);
    int nz = 0;
    for (double v : jumps) nz += v != 0.0;
    CHECK(nz == 20);
    for (double v : x) CHECK(std::fabs(v) <= 1.0);
  }
  CHECK(error_kind_of([] { piecewise_constant_signal(4, 4, 1.0, 1); }) == ErrorKind::InvalidParameter);
  CHECK(error_kind_of([] { piecewise_constant_signal(4, 0, 1.0, 1); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("tv problem assembly") {
  TvProblemParams params;
  params.n = 64;
  params.m = 32;
  params.jumps = 5;
  const TvInstance inst = make_tv_problem(params);
  const CompositeProblem& pb = inst.problem;
  CHECK(pb.a() == difference_matrix(64));
  CHECK(pb.b() == Matrix::identity(63));
  CHECK(pb.b_is_identity());
  CHECK(pb.loss().d() == gaussian_matrix(32, 64, params.seed));
  CHECK(inst.truth.x_star == piecewise_constant_signal(64, 5, 1.0, params.seed + 1));
  CHECK(distance(multiply(pb.loss().d(), inst.truth.x_star), pb.loss().b()) == 0.0);
  CHECK(distance(multiply(pb.a(), inst.truth.x_star), inst.truth.y_star) <= 1e-12);
  CHECK(pb.mu_b() == 1.0);
  CHECK(pb.norm_b() == 1.0);
  const double want_mu0 = 4.0 * std::pow(std::sin(std::numbers::pi / 128.0), 2);
  CHECK(std::fabs(pb.mu0() - want_mu0) <= 1e-6 * want_mu0);
  CHECK(pb.loss().ell_f() == doctest::Approx(2.0 * max_eig_symmetric(gram(pb.loss().d()))));

  params.noise_sigma = 0.1;
  const TvInstance noisy = make_tv_problem(params);
  CHECK(distance(multiply(noisy.problem.loss().d(), noisy.truth.x_star), noisy.problem.loss().b()) > 0.0);
}

TEST_CASE("default tv problem has the experiment shapes") {
  const TvInstance inst = make_tv_problem(TvProblemParams{});
  CHECK(inst.problem.a().rows() == 511);
  CHECK(inst.problem.a().cols() == 512);
  CHECK(inst.problem.loss().d().rows() == 256);
  CHECK(inst.problem.loss().d().cols() == 512);
}

TEST_CASE("loss and problem checks") {
  const QuadraticLoss loss(Matrix{{1, 0}, {0, 2}}, Vector{1, 1});
  CHECK(loss.value(Vector{1, 1}) == 1.0);
  CHECK(loss.gradient(Vector{1, 1}) == Vector{0, 4});
  CHECK(loss.ell_f() == doctest::Approx(8.0));
  CHECK(error_kind_of([] { QuadraticLoss(Matrix(2, 2), Vector(3)); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([&] {
          CompositeProblem(loss, Regularizer(RegularizerKind::L1, 1), Matrix(2, 2), Matrix(3, 2));
        }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind_of([&] {
          CompositeProblem(loss, Regularizer(RegularizerKind::L1, 1), Matrix(2, 3), Matrix(2, 2));
        }) == ErrorKind::DimensionMismatch);
}
