#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace gaussent::simd {

using cplx = std::complex<double>;

// Magnitudes below this are written as exact zeros by the product kernels.
inline constexpr double kFlushBelow = 1e-300;

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

struct KernelTable {
  Backend backend;
  // out[j] = s * t[j] * b[j]
  void (*scaled_product)(double* out, double s, const double* t, const double* b, std::size_t n);
  void (*scaled_product_complex)(cplx* out, cplx s, const double* t, const cplx* b, std::size_t n);
  // Σ a[j] b[j] (no conjugation in the complex variant)
  double (*dot)(const double* a, const double* b, std::size_t n);
  cplx (*dot_complex)(const cplx* a, const cplx* b, std::size_t n);
  // max |a[j] - b[j]|, and max |a[j] - conj(b[j])|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  double (*max_abs_diff_conj)(const cplx* a, const cplx* b, std::size_t n);
};

bool backend_supported(Backend b) noexcept;

/// Table for a specific backend; throws std::invalid_argument when unsupported here.
const KernelTable& kernels_for(Backend b);

/// Active table: best supported backend, or GAUSSENT_SIMD=scalar|avx2|neon if set.
const KernelTable& kernels();

/// Overrides the active backend (tests, benchmarks).
void force_backend(Backend b);

namespace detail {
extern const KernelTable scalar_table;
#if defined(GAUSSENT_HAVE_AVX2_TU)
extern const KernelTable avx2_table;
#endif
#if defined(GAUSSENT_HAVE_NEON_TU)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace gaussent::simd
