#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "gaussent/simd/kernels.hpp"

namespace gaussent::simd {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d flush_pd(__m256d v) {
  const __m256d tiny = _mm256_cmp_pd(abs_pd(v), _mm256_set1_pd(kFlushBelow), _CMP_LT_OQ);
  return _mm256_andnot_pd(tiny, v);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// [re0, im0, re1, im1] x [re0', im0', re1', im1'] as complex products.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d aswap = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, bre), _mm256_mul_pd(aswap, bim));
}

void scaled_product(double* out, double s, const double* t, const double* b, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_mul_pd(_mm256_mul_pd(vs, _mm256_loadu_pd(t + j)), _mm256_loadu_pd(b + j));
    _mm256_storeu_pd(out + j, flush_pd(v));
  }
  for (; j < n; ++j) {
    const double v = s * t[j] * b[j];
    out[j] = std::abs(v) < kFlushBelow ? 0.0 : v;
  }
}

void scaled_product_complex(cplx* out, cplx s, const double* t, const cplx* b, std::size_t n) {
  const __m256d vs = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  auto* po = reinterpret_cast<double*>(out);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m128d tt = _mm_loadu_pd(t + j);
    const __m256d td = _mm256_permute4x64_pd(_mm256_castpd128_pd256(tt), 0x50);
    const __m256d r = _mm256_mul_pd(vs, td);
    _mm256_storeu_pd(po + 2 * j, flush_pd(cmul(r, _mm256_loadu_pd(pb + 2 * j))));
  }
  for (; j < n; ++j) {
    const double re = s.real() * t[j];
    const double im = s.imag() * t[j];
    const double pr = re * b[j].real() - im * b[j].imag();
    const double pi = re * b[j].imag() + im * b[j].real();
    out[j] = cplx(std::abs(pr) < kFlushBelow ? 0.0 : pr, std::abs(pi) < kFlushBelow ? 0.0 : pi);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), acc1);
  }
  for (; j + 4 <= n; j += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

cplx dot_complex(const cplx* a, const cplx* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  // direct = [ar br, ai br], crossed = [ai bi, ar bi] per element.
  __m256d direct = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * j);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * j);
    direct = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), direct);
    crossed = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), crossed);
  }
  alignas(32) double d[4], c[4];
  _mm256_store_pd(d, direct);
  _mm256_store_pd(c, crossed);
  double re = (d[0] + d[2]) - (c[0] + c[2]);
  double im = (d[1] + d[3]) + (c[1] + c[3]);
  for (; j < n; ++j) {
    re += a[j].real() * b[j].real() - a[j].imag() * b[j].imag();
    im += a[j].real() * b[j].imag() + a[j].imag() * b[j].real();
  }
  return {re, im};
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    m = _mm256_max_pd(m, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j))));
  }
  double r = hmax(m);
  for (; j < n; ++j) r = std::max(r, std::abs(a[j] - b[j]));
  return r;
}

double max_abs_diff_conj(const cplx* a, const cplx* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d vb = _mm256_xor_pd(_mm256_loadu_pd(pb + 2 * j), conj_mask);
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * j), vb);
    const __m256d sq = _mm256_mul_pd(d, d);
    m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
  }
  double r = std::sqrt(hmax(m));
  for (; j < n; ++j) {
    r = std::max(r, std::hypot(a[j].real() - b[j].real(), a[j].imag() + b[j].imag()));
  }
  return r;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Backend::Avx2, scaled_product, scaled_product_complex, dot,
                             dot_complex,   max_abs_diff,   max_abs_diff_conj};
}

}  // namespace gaussent::simd
