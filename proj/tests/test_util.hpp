#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>

#include "badmm/errors.hpp"
#include "badmm/numerics.hpp"
#include "badmm/rng.hpp"

namespace testutil {

inline badmm::Vector random_vector(badmm::Rng& rng, std::size_t n, double scale = 1.0) {
  badmm::Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline badmm::Matrix random_matrix(badmm::Rng& rng, std::size_t r, std::size_t c) {
  badmm::Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.normal();
  return m;
}

// GᵀG + I
inline badmm::Matrix random_spd(badmm::Rng& rng, std::size_t n) {
  badmm::Matrix m = badmm::gram(random_matrix(rng, n, n));
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
  return m;
}

inline badmm::ErrorKind error_kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const badmm::Error& e) {
    return e.kind();
  }
  FAIL("expected badmm::Error");
  return badmm::ErrorKind::InvalidParameter;
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace testutil
