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

#include "vrs/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>

#include "vrs/errors.hpp"

namespace vrs {

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2) throw InvalidArgument("FFT size must be >= 2");
  impl_->real = fftw_alloc_real(n);
  impl_->spec = fftw_alloc_complex(n / 2 + 1);
  const int ni = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_r2c_1d(ni, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(ni, impl_->spec, impl_->real, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->inv) throw ConfigError("FFTW planning failed");
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<cplx> out) {
  const std::size_t m = std::min(in.size(), n_);
  std::copy_n(in.begin(), m, impl_->real);
  std::fill(impl_->real + m, impl_->real + n_, 0.0);
  fftw_execute(impl_->fwd);
  std::memcpy(static_cast<void*>(out.data()), impl_->spec, bins() * sizeof(cplx));
}

void RealFft::inverse(std::span<const cplx> in, std::span<double> out) {
  std::memcpy(impl_->spec, in.data(), bins() * sizeof(cplx));
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(n_);
  const std::size_t m = std::min(out.size(), n_);
  for (std::size_t i = 0; i < m; ++i) out[i] = impl_->real[i] * scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace vrs
