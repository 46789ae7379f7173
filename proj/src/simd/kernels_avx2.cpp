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

// Built with -mavx2 -mfma. Only reached through the dispatcher after a CPU
// feature check, so nothing here may run at static-init time.

#include <immintrin.h>

#include "vrs/simd/kernels.hpp"

namespace vrs::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_squares(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void householder(double* v, std::size_t n) {
  if (n == 0) return;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += v[i];
  const double c = 2.0 * s / static_cast<double>(n);
  const __m256d vc = _mm256_set1_pd(c);
  i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(v + i, _mm256_sub_pd(_mm256_loadu_pd(v + i), vc));
  for (; i < n; ++i) v[i] -= c;
}

// std::complex<double> is layout-compatible with double[2].
void complex_mac(const cplx* x, const cplx* h, cplx* acc, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* hd = reinterpret_cast<const double*>(h);
  auto* ad = reinterpret_cast<double*>(acc);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d hv = _mm256_loadu_pd(hd + 2 * i);
    const __m256d h_re = _mm256_movedup_pd(hv);
    const __m256d h_im = _mm256_permute_pd(hv, 0xF);
    const __m256d x_sw = _mm256_permute_pd(xv, 0x5);
    const __m256d prod = _mm256_fmaddsub_pd(xv, h_re, _mm256_mul_pd(x_sw, h_im));
    _mm256_storeu_pd(ad + 2 * i, _mm256_add_pd(_mm256_loadu_pd(ad + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double hr = h[i].real(), hi = h[i].imag();
    acc[i] += cplx(xr * hr - xi * hi, xr * hi + xi * hr);
  }
}

void cross_spectra(const cplx* x, const cplx* y, double* gxx, double* gyy,
                   cplx* gxy, std::size_t n) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  auto* gd = reinterpret_cast<double*>(gxy);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);

    // [|x0|^2, |x0|^2, |x1|^2, |x1|^2] -> lanes 0 and 2
    const __m256d xx = _mm256_hadd_pd(_mm256_mul_pd(xv, xv), _mm256_mul_pd(xv, xv));
    const __m256d yy = _mm256_hadd_pd(_mm256_mul_pd(yv, yv), _mm256_mul_pd(yv, yv));
    const __m128d xx2 = _mm256_castpd256_pd128(_mm256_permute4x64_pd(xx, 0x08));
    const __m128d yy2 = _mm256_castpd256_pd128(_mm256_permute4x64_pd(yy, 0x08));
    _mm_storeu_pd(gxx + i, _mm_add_pd(_mm_loadu_pd(gxx + i), xx2));
    _mm_storeu_pd(gyy + i, _mm_add_pd(_mm_loadu_pd(gyy + i), yy2));

    // x * conj(y) = [xr*yr + xi*yi, xi*yr - xr*yi]
    const __m256d y_re = _mm256_movedup_pd(yv);
    const __m256d y_im = _mm256_permute_pd(yv, 0xF);
    const __m256d x_sw = _mm256_permute_pd(xv, 0x5);
    const __m256d prod = _mm256_fmsubadd_pd(xv, y_re, _mm256_mul_pd(x_sw, y_im));
    _mm256_storeu_pd(gd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(gd + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    gxx[i] += xr * xr + xi * xi;
    gyy[i] += yr * yr + yi * yi;
    gxy[i] += cplx(xr * yr + xi * yi, xi * yr - xr * yi);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2",      dot,         axpy,
                                 sum_squares, householder, complex_mac,
                                 cross_spectra};
  return table;
}

}  // namespace vrs::simd
