#include <doctest.h>

#include <cmath>

#include "badmm/proximal.hpp"
#include "test_util.hpp"

using namespace badmm;
using testutil::error_kind_of;

namespace {

double soft_obj(double t, double v, double kappa) { return kappa * std::fabs(t) + 0.5 * (t - v) * (t - v); }
double half_obj(double t, double v, double kappa) {
  return kappa * std::sqrt(std::fabs(t)) + (t - v) * (t - v);
}

double oracle_soft(double v, double kappa) {
  return prox_oracle_scalar([&](double t) { return soft_obj(t, v, kappa); }, -12.0, 12.0);
}
double oracle_half(double v, double kappa) {
  return prox_oracle_scalar([&](double t) { return half_obj(t, v, kappa); }, -12.0, 12.0);
}

}  // namespace

TEST_CASE("soft shrink values") {
  CHECK(soft_shrink_scalar(0.0, 1.0) == 0.0);
  CHECK(soft_shrink_scalar(2.0, 0.5) == 1.5);
  CHECK(soft_shrink_scalar(-0.3, 0.5) == 0.0);
  CHECK(soft_shrink_scalar(-2.0, 0.5) == -1.5);
  CHECK(soft_shrink_scalar(0.7, 0.0) == 0.7);
}

TEST_CASE("half shrink values") {
  CHECK(half_shrink_scalar(0.0, 1.0) == 0.0);
  CHECK(half_shrink_scalar(0.7, 0.0) == 0.7);
  CHECK(half_threshold(1.0) == doctest::Approx(std::cbrt(54.0) / 4.0));

  SUBCASE("tie at the threshold goes to zero") {
    const double ts = std::cbrt(54.0) / 4.0;
    CHECK(half_shrink_scalar(ts, 1.0) == 0.0);
    // the competing nonzero stationary point sits at 2t*/3 with the same objective
    CHECK(std::fabs(half_obj(2.0 * ts / 3.0, ts, 1.0) - half_obj(0.0, ts, 1.0)) <= 1e-9);
  }
  SUBCASE("agrees with the oracle at v = 2") {
    const double t_hat = oracle_half(2.0, 1.0);
    CHECK(std::fabs(half_shrink_scalar(2.0, 1.0) - t_hat) <= 1e-5);
  }
}

TEST_CASE("shrinkage argument checks") {
  CHECK(error_kind_of([] { soft_shrink_scalar(1.0, -0.1); }) == ErrorKind::InvalidParameter);
  CHECK(error_kind_of([] { half_shrink_scalar(1.0, -0.1); }) == ErrorKind::InvalidParameter);
  CHECK(error_kind_of([] { half_shrink_scalar(NAN, 1.0); }) == ErrorKind::InvalidParameter);
  CHECK(error_kind_of([] { soft_shrink_scalar(INFINITY, 1.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("oracle on its own examples") {
  CHECK(std::fabs(prox_oracle_scalar([](double t) { return (t - 3) * (t - 3); }, -10, 10) - 3.0) <=
        1e-8);
  CHECK(std::fabs(prox_oracle_scalar([](double t) { return std::fabs(t) + 0.5 * (t - 0.4) * (t - 0.4); },
                                     -5, 5)) <= 1e-9);
  // stationarity of the ℓ½ objective at its nonzero minimizer
  auto f = [](double t) { return std::sqrt(std::fabs(t)) + (t - 2) * (t - 2); };
  const double t_hat = prox_oracle_scalar(f, -5, 5);
  REQUIRE(t_hat != 0.0);
  const double h = 1e-6;
  CHECK(std::fabs((f(t_hat + h) - f(t_hat - h)) / (2 * h)) <= 1e-3);

  CHECK(error_kind_of([] { prox_oracle_scalar([](double t) { return t * t; }, 1, 1); }) ==
        ErrorKind::InvalidBracket);
  CHECK(error_kind_of([] { prox_oracle_scalar([](double t) { return t * t; }, 0, 1, 10); }) ==
        ErrorKind::InvalidParameter);
}

TEST_CASE("oracle agreement over random arguments") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-10, 10);
    const double kappa = 5.0 - rng.uniform(0, 5);  // (0, 5]
    CAPTURE(v);
    CAPTURE(kappa);
    CHECK(std::fabs(soft_shrink_scalar(v, kappa) - oracle_soft(v, kappa)) <= 1e-5);
    CHECK(std::fabs(half_shrink_scalar(v, kappa) - oracle_half(v, kappa)) <= 1e-5);
  }
}

TEST_CASE("half shrink zero region boundary") {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const double kappa = 5.0 - rng.uniform(0, 5);
    const double ts = std::cbrt(54.0) / 4.0 * std::pow(kappa, 2.0 / 3.0);
    for (double sgn : {1.0, -1.0}) {
      CHECK(half_shrink_scalar(sgn * ts * (1 - 1e-6), kappa) == 0.0);
      CHECK(half_shrink_scalar(sgn * ts * (1 + 1e-6), kappa) != 0.0);
      // the jump: just above the threshold the output is about 2t*/3 in magnitude
      CHECK(std::fabs(half_shrink_scalar(sgn * ts * (1 + 1e-6), kappa)) >= 0.66 * ts);
    }
  }
}

TEST_CASE("odd symmetry, nonexpansiveness and objective certification") {
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const double v = rng.uniform(-10, 10);
    const double v2 = rng.uniform(-10, 10);
    const double kappa = rng.uniform(0, 5);
    CHECK(soft_shrink_scalar(-v, kappa) == -soft_shrink_scalar(v, kappa));
    CHECK(half_shrink_scalar(-v, kappa) == -half_shrink_scalar(v, kappa));
    CHECK(std::fabs(soft_shrink_scalar(v, kappa) - soft_shrink_scalar(v2, kappa)) <=
          std::fabs(v - v2) + 1e-15);

    const double s = soft_shrink_scalar(v, kappa);
    CHECK(soft_obj(s, v, kappa) <= soft_obj(v, v, kappa) + 1e-12);
    CHECK(soft_obj(s, v, kappa) <= soft_obj(0, v, kappa) + 1e-12);
    const double h = half_shrink_scalar(v, kappa);
    CHECK(half_obj(h, v, kappa) <= half_obj(v, v, kappa) + 1e-12);
    CHECK(half_obj(h, v, kappa) <= half_obj(0, v, kappa) + 1e-12);
  }
}

TEST_CASE("half shrink never loses to the oracle objective") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(-10, 10);
    const double kappa = rng.uniform(0.01, 5);
    const double o = oracle_half(v, kappa);
    CHECK(half_obj(half_shrink_scalar(v, kappa), v, kappa) <= half_obj(o, v, kappa) + 1e-10);
  }
}

TEST_CASE("vector shrinkage") {
  CHECK(shrink_vector(Vector(4), 0.3, ShrinkageKind::Soft) == Vector(4));
  CHECK(shrink_vector(Vector(4), 0.3, ShrinkageKind::Half) == Vector(4));
  CHECK(shrink_vector(Vector{2, -2}, 0.5, ShrinkageKind::Soft) == Vector{1.5, -1.5});
  Rng rng(8);
  const Vector v = testutil::random_vector(rng, 50, 2.0);
  const Vector h = shrink_vector(v, 0.7, ShrinkageKind::Half);
  const Vector s = shrink_vector(v, 0.7, ShrinkageKind::Soft);
  REQUIRE(h.size() == 50);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(h[i] == half_shrink_scalar(v[i], 0.7));
    CHECK(s[i] == soft_shrink_scalar(v[i], 0.7));
  }
}
