#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "gaussent/simd/kernels.hpp"

namespace gaussent::simd {

namespace {

inline float64x2_t flush_f64(float64x2_t v) {
  const uint64x2_t tiny = vcltq_f64(vabsq_f64(v), vdupq_n_f64(kFlushBelow));
  return vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(v), tiny));
}

void scaled_product(double* out, double s, const double* t, const double* b, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t v = vmulq_f64(vmulq_f64(vs, vld1q_f64(t + j)), vld1q_f64(b + j));
    vst1q_f64(out + j, flush_f64(v));
  }
  for (; j < n; ++j) {
    const double v = s * t[j] * b[j];
    out[j] = std::abs(v) < kFlushBelow ? 0.0 : v;
  }
}

void scaled_product_complex(cplx* out, cplx s, const double* t, const cplx* b, std::size_t n) {
  const float64x2_t vs = {s.real(), s.imag()};
  auto* po = reinterpret_cast<double*>(out);
  const auto* pb = reinterpret_cast<const double*>(b);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t r = vmulq_n_f64(vs, t[j]);  // [re, im]
    const float64x2_t vb = vld1q_f64(pb + 2 * j);
    const float64x2_t bre = vdupq_laneq_f64(vb, 0);
    const float64x2_t bim = vdupq_laneq_f64(vb, 1);
    const float64x2_t rswap = vextq_f64(r, r, 1);  // [im, re]
    const float64x2_t sign = {-1.0, 1.0};
    const float64x2_t v = vaddq_f64(vmulq_f64(r, bre), vmulq_f64(vmulq_f64(rswap, bim), sign));
    vst1q_f64(po + 2 * j, flush_f64(v));
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + j), vld1q_f64(b + j));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + j + 2), vld1q_f64(b + j + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

cplx dot_complex(const cplx* a, const cplx* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  float64x2_t direct = vdupq_n_f64(0.0);
  float64x2_t crossed = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t va = vld1q_f64(pa + 2 * j);
    const float64x2_t vb = vld1q_f64(pb + 2 * j);
    direct = vfmaq_f64(direct, va, vdupq_laneq_f64(vb, 0));
    crossed = vfmaq_f64(crossed, vextq_f64(va, va, 1), vdupq_laneq_f64(vb, 1));
  }
  return {vgetq_lane_f64(direct, 0) - vgetq_lane_f64(crossed, 0),
          vgetq_lane_f64(direct, 1) + vgetq_lane_f64(crossed, 1)};
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    m = vmaxq_f64(m, vabdq_f64(vld1q_f64(a + j), vld1q_f64(b + j)));
  }
  double r = vmaxvq_f64(m);
  for (; j < n; ++j) r = std::max(r, std::abs(a[j] - b[j]));
  return r;
}

double max_abs_diff_conj(const cplx* a, const cplx* b, std::size_t n) {
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    r = std::max(r, std::hypot(a[j].real() - b[j].real(), a[j].imag() + b[j].imag()));
  }
  return r;
}

}  // namespace

namespace detail {
const KernelTable neon_table{Backend::Neon, scaled_product, scaled_product_complex, dot,
                             dot_complex,   max_abs_diff,   max_abs_diff_conj};
}

}  // namespace gaussent::simd
