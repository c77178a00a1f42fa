#include <atomic>
#include <cstdlib>
#include <string>

#include "badmm/errors.hpp"
#include "badmm/kernels.hpp"

namespace badmm::kernels {

namespace detail {
#ifndef BADMM_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif
#ifndef BADMM_HAVE_NEON
const KernelTable* neon_table() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* lookup(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return &scalar_table();
    case Backend::Avx2: return cpu_has_avx2_fma() ? detail::avx2_table() : nullptr;
    case Backend::Neon: return detail::neon_table();
  }
  return nullptr;
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("BADMM_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && lookup(Backend::Avx2)) return lookup(Backend::Avx2);
    if (want == "neon" && lookup(Backend::Neon)) return lookup(Backend::Neon);
  }
  if (const KernelTable* t = lookup(Backend::Avx2)) return t;
  if (const KernelTable* t = lookup(Backend::Neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept { return lookup(b) != nullptr; }

const KernelTable& table_for(Backend b) {
  const KernelTable* t = lookup(b);
  if (!t) {
    throw Error(ErrorKind::InvalidParameter,
                "kernel backend '" + std::string(to_string(b)) + "' is not available");
  }
  return *t;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

Backend active_backend() noexcept { return active().backend; }

void set_backend(Backend b) { current().store(&table_for(b), std::memory_order_release); }

}  // namespace badmm::kernels
