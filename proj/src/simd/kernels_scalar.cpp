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

#include "vrs/simd/kernels.hpp"

namespace vrs::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_squares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void householder(double* v, std::size_t n) {
  if (n == 0) return;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  const double c = 2.0 * s / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) v[i] -= c;
}

void complex_mac(const cplx* x, const cplx* h, cplx* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double hr = h[i].real(), hi = h[i].imag();
    acc[i] += cplx(xr * hr - xi * hi, xr * hi + xi * hr);
  }
}

void cross_spectra(const cplx* x, const cplx* y, double* gxx, double* gyy,
                   cplx* gxy, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    gxx[i] += xr * xr + xi * xi;
    gyy[i] += yr * yr + yi * yi;
    gxy[i] += cplx(xr * yr + xi * yi, xi * yr - xr * yi);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",    dot,         axpy,
                                 sum_squares, householder, complex_mac,
                                 cross_spectra};
  return table;
}

}  // namespace vrs::simd
