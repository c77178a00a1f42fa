#include <doctest.h>

#include <cmath>
#include <vector>

#include "badmm/kernels.hpp"
#include "badmm/rng.hpp"

using namespace badmm;
namespace k = badmm::kernels;

namespace {

std::vector<double> random_values(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& e : v) e = scale * rng.normal();
  return v;
}

// every compiled-in vector table, to be compared against the scalar reference
std::vector<const k::KernelTable*> vector_tables() {
  std::vector<const k::KernelTable*> out;
  if (k::backend_available(k::Backend::Avx2)) out.push_back(&k::table_for(k::Backend::Avx2));
  if (k::backend_available(k::Backend::Neon)) out.push_back(&k::table_for(k::Backend::Neon));
  return out;
}

}  // namespace

TEST_CASE("scalar kernels on hand values") {
  const auto& s = k::scalar_table();
  const double x[3] = {1, 2, 3};
  double y[3] = {4, 5, 6};
  CHECK(s.dot(x, y, 3) == 32.0);
  s.axpy(2.0, x, y, 3);
  CHECK(y[0] == 6.0);
  CHECK(y[2] == 12.0);

  // [[1,2,3],[4,5,6]]
  const double m[6] = {1, 2, 3, 4, 5, 6};
  double out2[2];
  s.gemv(m, 2, 3, x, out2);
  CHECK(out2[0] == 14.0);
  CHECK(out2[1] == 32.0);
  const double w[2] = {1, -1};
  double out3[3];
  s.gemv_t(m, 2, 3, w, out3);
  CHECK(out3[0] == -3.0);
  CHECK(out3[1] == -3.0);
  CHECK(out3[2] == -3.0);

  const double v[4] = {2.0, -2.0, 0.3, -0.5};
  double sh[4];
  s.soft_shrink(v, 0.5, sh, 4);
  CHECK(sh[0] == 1.5);
  CHECK(sh[1] == -1.5);
  CHECK(sh[2] == 0.0);
  CHECK(sh[3] == 0.0);
}

TEST_CASE("scalar backend is always available and can be pinned") {
  CHECK(k::backend_available(k::Backend::Scalar));
  {
    k::ScopedBackend pin(k::Backend::Scalar);
    CHECK(k::active_backend() == k::Backend::Scalar);
  }
  MESSAGE("active backend: " << k::to_string(k::active_backend()));
}

TEST_CASE("unavailable backends are rejected") {
  for (k::Backend b : {k::Backend::Avx2, k::Backend::Neon}) {
    if (!k::backend_available(b)) CHECK_THROWS(k::table_for(b));
  }
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const auto tables = vector_tables();
  if (tables.empty()) {
    MESSAGE("no vector backend on this build; nothing to compare");
    return;
  }
  const auto& ref = k::scalar_table();
  Rng rng(42);
  // lengths straddle the 4- and 16-wide unrolls and their tails
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 15u, 16u, 17u, 31u, 64u, 127u, 513u, 1000u}) {
    const auto x = random_values(rng, n);
    const auto y0 = random_values(rng, n);
    for (const auto* t : tables) {
      CAPTURE(n);
      CAPTURE(k::to_string(t->backend));
      const double d_ref = ref.dot(x.data(), y0.data(), n);
      double abs_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) abs_sum += std::fabs(x[i] * y0[i]);
      CHECK(std::fabs(t->dot(x.data(), y0.data(), n) - d_ref) <= 1e-14 * (1.0 + abs_sum));

      auto y_ref = y0;
      auto y_vec = y0;
      ref.axpy(-0.7, x.data(), y_ref.data(), n);
      t->axpy(-0.7, x.data(), y_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y_vec[i] - y_ref[i]) <= 1e-15 * (1 + std::fabs(y_ref[i])));

      std::vector<double> s_ref(n), s_vec(n);
      ref.soft_shrink(x.data(), 0.4, s_ref.data(), n);
      t->soft_shrink(x.data(), 0.4, s_vec.data(), n);
      CHECK(s_ref == s_vec);
    }
  }
}

TEST_CASE("vector gemv agrees with the scalar reference") {
  const auto tables = vector_tables();
  if (tables.empty()) return;
  const auto& ref = k::scalar_table();
  Rng rng(7);
  for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 1}, {3, 5}, {7, 16}, {17, 9}, {64, 33}, {255, 256}}) {
    const auto m = random_values(rng, rows * cols);
    const auto x = random_values(rng, cols);
    const auto w = random_values(rng, rows);
    std::vector<double> a_ref(rows), a_vec(rows), b_ref(cols), b_vec(cols);
    ref.gemv(m.data(), rows, cols, x.data(), a_ref.data());
    ref.gemv_t(m.data(), rows, cols, w.data(), b_ref.data());
    for (const auto* t : tables) {
      CAPTURE(rows);
      CAPTURE(cols);
      t->gemv(m.data(), rows, cols, x.data(), a_vec.data());
      t->gemv_t(m.data(), rows, cols, w.data(), b_vec.data());
      for (std::size_t i = 0; i < rows; ++i)
        CHECK(std::fabs(a_vec[i] - a_ref[i]) <= 1e-13 * (1.0 + std::sqrt(double(cols))));
      for (std::size_t j = 0; j < cols; ++j)
        CHECK(std::fabs(b_vec[j] - b_ref[j]) <= 1e-13 * (1.0 + std::sqrt(double(rows))));
    }
  }
}

TEST_CASE("soft shrink kernels put |v| = kappa in the dead zone") {
  // inputs exactly at ±kappa land on zero for every backend
  const double v[4] = {0.5, -0.5, 0.5000000001, -0.5000000001};
  for (const auto* t : vector_tables()) {
    double out[4];
    t->soft_shrink(v, 0.5, out, 4);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
    CHECK(out[2] > 0.0);
    CHECK(out[3] < 0.0);
  }
}
