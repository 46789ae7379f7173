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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the filters, the FDN, the renderer and
// the Welch estimator. Every kernel has a scalar reference implementation;
// vector variants (AVX2+FMA on x86-64, NEON on AArch64) are selected once at
// runtime and must agree with the reference to rounding.
//
// The environment variable VRS_SIMD=scalar|avx2|neon forces a variant (an
// unavailable request falls back to scalar).

namespace vrs::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);
  // v <- (I - 2/n * 1 1^T) v
  void (*householder)(double* v, std::size_t n);
  // acc[i] += x[i] * h[i]
  void (*complex_mac)(const cplx* x, const cplx* h, cplx* acc, std::size_t n);
  // gxx[i] += |x[i]|^2, gyy[i] += |y[i]|^2, gxy[i] += x[i] * conj(y[i])
  void (*cross_spectra)(const cplx* x, const cplx* y, double* gxx, double* gyy,
                        cplx* gxy, std::size_t n);
};

/// The table selected for this process (CPU features + VRS_SIMD override).
const KernelTable& kernels();

const KernelTable& scalar_kernels();

/// Vector variant compiled into this build and supported by the running CPU,
/// or nullptr.
const KernelTable* vector_kernels();

}  // namespace vrs::simd
