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
#include <memory>
#include <span>

namespace vrs {

using cplx = std::complex<double>;

/// Real-to-complex FFT of fixed size backed by FFTW (estimate-mode plans, so
/// results do not depend on planner timing). Not copyable; one instance per
/// thread.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// `in` shorter than size() is zero-padded. `out` must hold bins() values.
  void forward(std::span<const double> in, std::span<cplx> out);
  /// Unnormalised inverse scaled by 1/n; writes min(out.size(), size()) samples.
  void inverse(std::span<const cplx> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace vrs
