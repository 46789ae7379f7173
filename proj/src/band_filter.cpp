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

#include "vrs/band_filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vrs/errors.hpp"
#include "vrs/fft.hpp"

namespace vrs {
namespace {

constexpr double kFloorDb = -120.0;
constexpr std::size_t kFadeTaps = 32;

double to_db(double g) { return g > 0.0 ? std::max(20.0 * std::log10(g), kFloorDb) : kFloorDb; }

}  // namespace

std::size_t band_filter_length(double fs) {
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::lround(256.0 * fs / 44100.0)));
}

double band_target_gain(const BandArray& gains, double hz) {
  if (!(hz > kOctaveCenters.front())) return gains.front();
  if (hz >= kOctaveCenters.back()) return gains.back();
  const double pos = std::log2(hz / kOctaveCenters.front());
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  const double db = (1.0 - frac) * to_db(gains[i]) + frac * to_db(gains[i + 1]);
  return std::pow(10.0, db / 20.0);
}

Signal design_band_filter(const BandArray& gains, double fs) {
  for (double g : gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("band gains must be finite and >= 0");
  }
  if (std::all_of(gains.begin(), gains.end(), [&](double g) { return g == gains[0]; })) {
    return {gains[0]};
  }

  const std::size_t taps = band_filter_length(fs);
  const std::size_t n = next_pow2(32 * taps);
  RealFft fft(n);
  const std::size_t bins = fft.bins();

  // Real cepstrum of the log-magnitude target.
  std::vector<cplx> spec(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double hz = static_cast<double>(k) * fs / static_cast<double>(n);
    spec[k] = std::log(std::max(band_target_gain(gains, hz), std::pow(10.0, kFloorDb / 20.0)));
  }
  Signal cep(n);
  fft.inverse(spec, cep);

  // Fold onto positive quefrencies -> minimum phase.
  Signal folded(n, 0.0);
  folded[0] = cep[0];
  for (std::size_t i = 1; i < n / 2; ++i) folded[i] = 2.0 * cep[i];
  folded[n / 2] = cep[n / 2];

  fft.forward(folded, spec);
  for (auto& s : spec) s = std::exp(s);
  Signal h(n);
  fft.inverse(spec, h);
  h.resize(taps);

  for (std::size_t i = 0; i < kFadeTaps && i < taps; ++i) {
    const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) /
                                           static_cast<double>(kFadeTaps)));
    h[taps - 1 - i] *= w;
  }
  return h;
}

double fir_magnitude(std::span<const double> h, double hz, double fs) {
  const double w = 2.0 * std::numbers::pi * hz / fs;
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    re += h[i] * std::cos(w * static_cast<double>(i));
    im -= h[i] * std::sin(w * static_cast<double>(i));
  }
  return std::hypot(re, im);
}

}  // namespace vrs
