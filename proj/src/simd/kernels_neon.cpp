// Copyright 2026 The vrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AArch64 Advanced SIMD variants (two doubles per register).

#include <arm_neon.h>

#include "vrs/simd/kernels.hpp"

namespace vrs::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_squares(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t a = vld1q_f64(x + i);
    const float64x2_t b = vld1q_f64(x + i + 2);
    acc0 = vfmaq_f64(acc0, a, a);
    acc1 = vfmaq_f64(acc1, b, b);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void householder(double* v, std::size_t n) {
  if (n == 0) return;
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(v + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += v[i];
  const double c = 2.0 * s / static_cast<double>(n);
  const float64x2_t vc = vdupq_n_f64(c);
  i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(v + i, vsubq_f64(vld1q_f64(v + i), vc));
  for (; i < n; ++i) v[i] -= c;
}

// One complex<double> per register: [re, im].
void complex_mac(const cplx* x, const cplx* h, cplx* acc, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* hd = reinterpret_cast<const double*>(h);
  auto* ad = reinterpret_cast<double*>(acc);
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t hv = vld1q_f64(hd + 2 * i);
    const float64x2_t h_re = vdupq_laneq_f64(hv, 0);
    const float64x2_t h_im = vdupq_laneq_f64(hv, 1);
    const float64x2_t x_sw = vextq_f64(xv, xv, 1);  // [xi, xr]
    float64x2_t prod = vmulq_f64(xv, h_re);
    prod = vfmaq_f64(prod, vmulq_f64(x_sw, sign), h_im);
    vst1q_f64(ad + 2 * i, vaddq_f64(vld1q_f64(ad + 2 * i), prod));
  }
}

void cross_spectra(const cplx* x, const cplx* y, double* gxx, double* gyy,
                   cplx* gxy, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  auto* gd = reinterpret_cast<double*>(gxy);
  const float64x2_t sign = {1.0, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t yv = vld1q_f64(yd + 2 * i);
    gxx[i] += vaddvq_f64(vmulq_f64(xv, xv));
    gyy[i] += vaddvq_f64(vmulq_f64(yv, yv));
    const float64x2_t y_re = vdupq_laneq_f64(yv, 0);
    const float64x2_t y_im = vdupq_laneq_f64(yv, 1);
    const float64x2_t x_sw = vextq_f64(xv, xv, 1);  // [xi, xr]
    float64x2_t prod = vmulq_f64(xv, y_re);
    prod = vfmaq_f64(prod, vmulq_f64(x_sw, sign), y_im);
    vst1q_f64(gd + 2 * i, vaddq_f64(vld1q_f64(gd + 2 * i), prod));
  }
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{"neon",      dot,         axpy,
                                 sum_squares, householder, complex_mac,
                                 cross_spectra};
  return table;
}

}  // namespace vrs::simd
