#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gaussent/simd/kernels.hpp"

namespace gaussent::simd {

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* detect() {
  if (const char* env = std::getenv("GAUSSENT_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return &detail::scalar_table;
    if (v == "avx2" && backend_supported(Backend::Avx2)) return &kernels_for(Backend::Avx2);
    if (v == "neon" && backend_supported(Backend::Neon)) return &kernels_for(Backend::Neon);
  }
  if (backend_supported(Backend::Avx2)) return &kernels_for(Backend::Avx2);
  if (backend_supported(Backend::Neon)) return &kernels_for(Backend::Neon);
  return &detail::scalar_table;
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

bool backend_supported(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(GAUSSENT_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(GAUSSENT_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("SIMD backend not available: " + std::string(to_string(b)));
  }
  switch (b) {
#if defined(GAUSSENT_HAVE_AVX2_TU)
    case Backend::Avx2: return detail::avx2_table;
#endif
#if defined(GAUSSENT_HAVE_NEON_TU)
    case Backend::Neon: return detail::neon_table;
#endif
    default: return detail::scalar_table;
  }
}

const KernelTable& kernels() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = detect();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void force_backend(Backend b) { g_active.store(&kernels_for(b), std::memory_order_release); }

}  // namespace gaussent::simd
