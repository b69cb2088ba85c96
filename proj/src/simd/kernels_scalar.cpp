#include <cmath>

#include "gaussent/simd/kernels.hpp"

namespace gaussent::simd {

namespace {

double flush(double v) { return std::abs(v) < kFlushBelow ? 0.0 : v; }

void scaled_product(double* out, double s, const double* t, const double* b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = flush(s * t[j] * b[j]);
}

void scaled_product_complex(cplx* out, cplx s, const double* t, const cplx* b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = s.real() * t[j];
    const double im = s.imag() * t[j];
    const double pr = re * b[j].real() - im * b[j].imag();
    const double pi = re * b[j].imag() + im * b[j].real();
    out[j] = cplx(flush(pr), flush(pi));
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

cplx dot_complex(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += a[j].real() * b[j].real() - a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() + a[j].imag() * b[j].real();
  }
  return {re, im};
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_abs_diff_conj(const cplx* a, const cplx* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    m = std::max(m, std::hypot(a[j].real() - b[j].real(), a[j].imag() + b[j].imag()));
  }
  return m;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Backend::Scalar, scaled_product, scaled_product_complex, dot,
                               dot_complex,     max_abs_diff,   max_abs_diff_conj};
}

}  // namespace gaussent::simd
