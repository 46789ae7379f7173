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

#include "vrs/convolve.hpp"

#include <algorithm>

#include "vrs/fft.hpp"
#include "vrs/simd/kernels.hpp"

namespace vrs {
namespace {
constexpr std::size_t kDirectLimit = 64;
}

Signal fir_filter(std::span<const double> x, std::span<const double> h) {
  Signal y(x.size(), 0.0);
  if (h.empty() || x.empty()) return y;
  if (h.size() == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = h[0] * x[i];
    return y;
  }
  const std::size_t L = h.size();
  // y[n] = dot(reversed h, padded x[n .. n+L-1])
  Signal hr(h.rbegin(), h.rend());
  Signal xp(L - 1 + x.size(), 0.0);
  std::copy(x.begin(), x.end(), xp.begin() + static_cast<std::ptrdiff_t>(L - 1));
  const auto& k = simd::kernels();
  for (std::size_t n = 0; n < x.size(); ++n) y[n] = k.dot(hr.data(), xp.data() + n, L);
  return y;
}

Signal convolve_direct(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Signal y(a.size() + b.size() - 1, 0.0);
  const auto& k = simd::kernels();
  // Scatter the shorter operand along the longer one.
  const auto& lng = a.size() >= b.size() ? a : b;
  const auto& sht = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < sht.size(); ++i) {
    if (sht[i] != 0.0) k.axpy(sht[i], lng.data(), y.data() + i, lng.size());
  }
  return y;
}

Signal convolve_fft(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const auto& lng = a.size() >= b.size() ? a : b;
  const auto& sht = a.size() >= b.size() ? b : a;
  const std::size_t nfft = std::max<std::size_t>(next_pow2(2 * sht.size()), 1024);
  const std::size_t block = nfft - sht.size() + 1;
  RealFft fft(nfft);
  std::vector<cplx> H(fft.bins()), X(fft.bins());
  fft.forward(sht, H);
  Signal y(a.size() + b.size() - 1, 0.0);
  Signal seg(nfft);
  for (std::size_t start = 0; start < lng.size(); start += block) {
    const std::size_t len = std::min(block, lng.size() - start);
    fft.forward(lng.subspan(start, len), X);
    for (std::size_t i = 0; i < X.size(); ++i) X[i] *= H[i];
    fft.inverse(X, seg);
    const std::size_t out_len = std::min(nfft, y.size() - start);
    for (std::size_t i = 0; i < out_len; ++i) y[start + i] += seg[i];
  }
  return y;
}

Signal convolve(std::span<const double> a, std::span<const double> b) {
  if (std::min(a.size(), b.size()) <= kDirectLimit) return convolve_direct(a, b);
  return convolve_fft(a, b);
}

}  // namespace vrs
